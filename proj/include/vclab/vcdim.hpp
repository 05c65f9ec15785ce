#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vclab/common.hpp"
#include "vclab/graph.hpp"
#include "vclab/prng.hpp"

namespace vclab {

inline constexpr std::uint32_t kSignatureCap = 20;

/// Bit i is 1 iff the witness vertex is adjacent to X[i]. Loops count: a
/// vertex inside X is adjacent to itself exactly when it carries a loop.
struct AdjacencySignature {
  std::uint32_t mask = 0;
  std::uint32_t k = 0;
};

inline AdjacencySignature signature(const DenseGraph& g, std::uint32_t v,
                                    std::span<const std::uint32_t> x) {
  if (x.size() > kSignatureCap) throw Error("signature: |X| exceeds the signature cap");
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (x[i] == x[j]) throw Error("signature: duplicate entries in X");
  AdjacencySignature sig{0, static_cast<std::uint32_t>(x.size())};
  for (std::size_t i = 0; i < x.size(); ++i)
    if (g.edge(v, x[i])) sig.mask |= std::uint32_t(1) << i;
  return sig;
}

/// A shattered set X with, for every 0/1 pattern on X, the witness vertex
/// realizing it (first vertex in index order wins each bucket).
struct ShatterWitness {
  std::vector<std::uint32_t> X;           // sorted
  std::vector<std::uint32_t> witnesses;   // indexed by mask, size 2^|X|
};

/// Recomputes every witness signature; true iff each reproduces its key.
inline bool witness_valid(const DenseGraph& g, const ShatterWitness& w) {
  if (w.witnesses.size() != (std::size_t(1) << w.X.size())) return false;
  for (std::uint32_t mask = 0; mask < w.witnesses.size(); ++mask)
    if (signature(g, w.witnesses[mask], w.X).mask != mask) return false;
  return true;
}

namespace detail {

/// Core scan: buckets U by signature over x; nullopt unless all masks occur.
inline std::optional<ShatterWitness> scan_shatter(const DenseGraph& g, const VertexSet& universe,
                                                  std::span<const std::uint32_t> x) {
  const std::uint32_t k = static_cast<std::uint32_t>(x.size());
  const std::uint32_t need = std::uint32_t(1) << k;
  std::vector<std::uint32_t> bucket(need, UINT32_MAX);
  std::uint32_t found = 0;
  for (std::uint32_t v : universe) {
    std::uint32_t mask = 0;
    for (std::uint32_t i = 0; i < k; ++i)
      if (g.edge(v, x[i])) mask |= std::uint32_t(1) << i;
    if (bucket[mask] == UINT32_MAX) {
      bucket[mask] = v;
      if (++found == need) break;
    }
  }
  if (found != need) return std::nullopt;
  ShatterWitness w;
  w.X.assign(x.begin(), x.end());
  std::sort(w.X.begin(), w.X.end());
  if (w.X != std::vector<std::uint32_t>(x.begin(), x.end())) {
    // buckets were keyed by the given order; recompute against sorted X
    std::vector<std::uint32_t> resorted(need, UINT32_MAX);
    for (std::uint32_t mask = 0; mask < need; ++mask) {
      const std::uint32_t v = bucket[mask];
      resorted[signature(g, v, w.X).mask] = v;
    }
    bucket = std::move(resorted);
  }
  w.witnesses = std::move(bucket);
  return w;
}

}  // namespace detail

/// Is X shattered by H(U)? X must lie inside U; |X| <= cap. Deterministic.
inline std::optional<ShatterWitness> is_shattered(const DenseGraph& g, const VertexSet& universe,
                                                  const std::vector<std::uint32_t>& x) {
  if (x.size() > kSignatureCap) throw Error("is_shattered: |X| exceeds the signature cap");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (x[i] >= x[i + 1]) throw Error("is_shattered: X must be strictly increasing");
  for (std::uint32_t v : x)
    if (!universe.contains(v)) throw Error("is_shattered: X must be a subset of U");
  return detail::scan_shatter(g, universe, x);
}

struct VcSearchOptions {
  std::uint32_t max_k = kSignatureCap;
  std::uint64_t retention_cap = 1'000'000;   // shattered sets kept per level
  std::uint64_t max_shatter_scans = 50'000'000;
};

enum class VcStop { none, retention, budget };

struct VcExactResult {
  std::uint32_t dimension = 0;
  ShatterWitness witness;          // for the deepest certified level
  bool exact = true;               // false: result is a certified lower bound only
  VcStop stopped_by = VcStop::none;
  std::uint64_t scans = 0;
};

/// Levelwise exact VC-dimension of H(U): level-(k+1) candidates extend
/// shattered level-k sets (shattering is downward closed). Hitting the
/// retention cap or the scan budget downgrades the result to a certified
/// lower bound, never a wrong answer.
inline VcExactResult vc_dimension_exact(const DenseGraph& g, const VertexSet& universe,
                                        const VcSearchOptions& opts = {}) {
  if (universe.empty()) throw Error("vc_dimension_exact: U must be nonempty");
  VcExactResult result;
  result.witness.X = {};
  result.witness.witnesses = {universe[0]};  // empty X: every vertex realizes the empty pattern

  std::vector<std::vector<std::uint32_t>> frontier = {{}};
  std::uint32_t level = 0;
  while (level < opts.max_k && frontier.size() > 0) {
    if ((std::uint64_t(1) << (level + 1)) > universe.size()) break;  // 2^d <= |U|
    std::vector<std::vector<std::uint32_t>> next;
    std::optional<ShatterWitness> level_witness;
    bool truncated = false;
    for (const auto& base : frontier) {
      const std::uint32_t start = base.empty() ? 0 : base.back() + 1;
      for (std::uint32_t v : universe) {
        if (v < start) continue;
        std::vector<std::uint32_t> candidate = base;
        candidate.push_back(v);
        if (++result.scans > opts.max_shatter_scans) {
          result.exact = false;
          result.stopped_by = VcStop::budget;
          return result;
        }
        auto w = detail::scan_shatter(g, universe, candidate);
        if (!w) continue;
        if (!level_witness) level_witness = *w;
        if (next.size() < opts.retention_cap)
          next.push_back(std::move(candidate));
        else
          truncated = true;
      }
    }
    if (next.empty()) break;
    ++level;
    result.dimension = level;
    result.witness = *level_witness;
    if (truncated) {
      result.exact = false;
      result.stopped_by = VcStop::retention;
    }
    frontier = std::move(next);
  }
  return result;
}

/// Randomized lower-bound search: samples candidate k-sets (uniform, and on
/// alternating trials biased toward median-degree vertices) and returns the
/// first witness. Absence is not a proof of VC < k.
inline std::optional<ShatterWitness> vc_at_least(const DenseGraph& g, const VertexSet& universe,
                                                 std::uint32_t k, std::uint64_t budget,
                                                 std::uint64_t seed) {
  if (k > kSignatureCap) throw Error("vc_at_least: k exceeds the signature cap");
  if (universe.empty()) throw Error("vc_at_least: U must be nonempty");
  if (k == 0) return ShatterWitness{{}, {universe[0]}};
  if (universe.size() < (std::uint64_t(1) << k) || k > universe.size()) return std::nullopt;

  // median-degree window for the biased mode
  std::vector<std::uint32_t> by_degree(universe.begin(), universe.end());
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return g.degree(a) < g.degree(b); });
  const std::size_t window = std::max<std::size_t>(std::max<std::size_t>(k, 2), by_degree.size() / 2);
  const std::size_t lo = (by_degree.size() - std::min(window, by_degree.size())) / 2;
  std::vector<std::uint32_t> median_pool(by_degree.begin() + lo,
                                         by_degree.begin() + lo + std::min(window, by_degree.size()));

  Rng rng(seed);
  const std::vector<std::uint32_t>& all = universe.members();
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    const bool biased = (trial % 2 == 1) && median_pool.size() >= k;
    std::vector<std::uint32_t> x = rng.sample(biased ? median_pool : all, k);
    std::sort(x.begin(), x.end());
    auto w = detail::scan_shatter(g, universe, x);
    if (w) return w;
  }
  return std::nullopt;
}

/// Selector triple for (v1,v2,v3): u_i ~ v_j iff i = j. The nine constraints
/// are independent per u_i, so the first tuple in index order is
/// (min candidates_1, min candidates_2, min candidates_3).
inline std::optional<std::array<std::uint32_t, 3>> find_selector_triple(
    const DenseGraph& g, const VertexSet& universe, std::uint32_t v1, std::uint32_t v2,
    std::uint32_t v3) {
  if (v1 == v2 || v1 == v3 || v2 == v3) throw Error("find_selector_triple: vertices must be distinct");
  const std::uint32_t vs[3] = {v1, v2, v3};
  std::array<std::uint32_t, 3> picked{};
  for (int i = 0; i < 3; ++i) {
    bool found = false;
    for (std::uint32_t u : universe) {
      if (!g.edge(u, vs[i])) continue;
      if (g.edge(u, vs[(i + 1) % 3]) || g.edge(u, vs[(i + 2) % 3])) continue;
      picked[i] = u;
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return picked;
}

}  // namespace vclab
