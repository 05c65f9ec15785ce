#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vclab/common.hpp"
#include "vclab/ffield.hpp"
#include "vclab/prng.hpp"

namespace vclab {

/// Sorted set of vertex indices. Construction normalizes (sort + dedup).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<std::uint32_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  static VertexSet full(std::uint32_t n) {
    std::vector<std::uint32_t> m(n);
    std::iota(m.begin(), m.end(), 0u);
    return VertexSet(std::move(m));
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::uint32_t operator[](std::size_t i) const { return members_[i]; }
  const std::vector<std::uint32_t>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool contains(std::uint32_t v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

  bool operator==(const VertexSet& other) const = default;

  /// Packed 1-bit-per-vertex mask, length words_for(n).
  std::vector<std::uint64_t> to_mask(std::uint32_t n) const {
    std::vector<std::uint64_t> mask((n + 63) / 64, 0);
    for (std::uint32_t v : members_) {
      if (v >= n) throw Error("VertexSet: index " + std::to_string(v) + " out of range");
      mask[v >> 6] |= std::uint64_t(1) << (v & 63);
    }
    return mask;
  }

 private:
  std::vector<std::uint32_t> members_;
};

struct GraphMeta {
  std::string family = "custom";  // distance | dotproduct | polynomial | random | custom
  std::uint32_t q = 0;
  std::uint32_t t = 0;
};

/// Dense symmetric 0/1 adjacency with bit-packed rows. Diagonal entries are
/// loops and are first-class: adjacency is exactly the defining relation,
/// including at x = x.
class DenseGraph {
 public:
  explicit DenseGraph(std::uint32_t n) : n_(n), words_((n + 63) / 64), bits_(std::size_t(n) * words_, 0) {
    if (n == 0) throw Error("DenseGraph: need at least one vertex");
  }

  std::uint32_t n() const { return n_; }
  std::uint32_t words() const { return words_; }

  bool edge(std::uint32_t i, std::uint32_t j) const {
    return (bits_[std::size_t(i) * words_ + (j >> 6)] >> (j & 63)) & 1;
  }

  void set_edge(std::uint32_t i, std::uint32_t j, bool present = true) {
    set_bit(i, j, present);
    set_bit(j, i, present);
  }

  std::span<const std::uint64_t> row(std::uint32_t i) const {
    return {bits_.data() + std::size_t(i) * words_, words_};
  }

  /// Row sum; a loop contributes exactly 1.
  std::uint32_t degree(std::uint32_t i) const {
    std::uint32_t d = 0;
    for (std::uint64_t w : row(i)) d += std::popcount(w);
    return d;
  }

  std::uint32_t loop_count() const {
    std::uint32_t c = 0;
    for (std::uint32_t i = 0; i < n_; ++i) c += edge(i, i);
    return c;
  }
  bool has_loops() const { return loop_count() > 0; }

  std::uint64_t edge_count_nonloop() const {
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < n_; ++i) total += degree(i);
    return (total - loop_count()) / 2;
  }

  /// Exact integer regularity test over row sums.
  std::optional<std::uint32_t> regular_degree() const {
    const std::uint32_t d0 = degree(0);
    for (std::uint32_t i = 1; i < n_; ++i)
      if (degree(i) != d0) return std::nullopt;
    return d0;
  }

  DenseGraph without_loops() const {
    DenseGraph g(*this);
    for (std::uint32_t i = 0; i < n_; ++i) g.set_bit(i, i, false);
    return g;
  }

  const std::vector<FieldVector>& labels() const { return labels_; }
  void set_labels(std::vector<FieldVector> labels) {
    if (!labels.empty() && labels.size() != n_) throw Error("DenseGraph: label count mismatch");
    labels_ = std::move(labels);
  }

  const GraphMeta& meta() const { return meta_; }
  void set_meta(GraphMeta m) { meta_ = std::move(m); }

  /// Canonical row-major packed bytes (8 bits per byte, ceil(n/8) bytes per
  /// row, LSB-first). This is the cache wire format and the hash input.
  std::vector<std::uint8_t> packed_rows() const {
    const std::size_t row_bytes = (n_ + 7) / 8;
    std::vector<std::uint8_t> out(row_bytes * n_, 0);
    for (std::uint32_t i = 0; i < n_; ++i)
      for (std::uint32_t j = 0; j < n_; ++j)
        if (edge(i, j)) out[std::size_t(i) * row_bytes + (j >> 3)] |= std::uint8_t(1) << (j & 7);
    return out;
  }

  static DenseGraph from_packed_rows(std::uint32_t n, const std::vector<std::uint8_t>& bytes) {
    const std::size_t row_bytes = (n + 7) / 8;
    if (bytes.size() != row_bytes * n) throw Error("DenseGraph: packed row size mismatch");
    DenseGraph g(n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j)
        if ((bytes[std::size_t(i) * row_bytes + (j >> 3)] >> (j & 7)) & 1) g.set_bit(i, j, true);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i; j < n; ++j)
        if (g.edge(i, j) != g.edge(j, i)) throw Error("DenseGraph: loaded matrix is not symmetric");
    return g;
  }

 private:
  void set_bit(std::uint32_t i, std::uint32_t j, bool present) {
    if (i >= n_ || j >= n_) throw Error("DenseGraph: vertex index out of range");
    std::uint64_t& w = bits_[std::size_t(i) * words_ + (j >> 6)];
    const std::uint64_t m = std::uint64_t(1) << (j & 63);
    w = present ? (w | m) : (w & ~m);
  }

  std::uint32_t n_;
  std::uint32_t words_;
  std::vector<std::uint64_t> bits_;
  std::vector<FieldVector> labels_;
  GraphMeta meta_;
};

/// Builds adjacency from a symmetric predicate. Only pairs i <= j are
/// evaluated; symmetry of the caller's relation is spot-verified on a
/// deterministic pseudo-random sample of swapped pairs.
template <typename Rel>
DenseGraph build_from_relation(std::uint32_t n, Rel&& rel) {
  DenseGraph g(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j)
      if (rel(i, j)) g.set_edge(i, j);
  Rng rng(0x5ca1ab1e ^ n);
  const std::uint32_t samples = std::min<std::uint32_t>(256, n * n);
  for (std::uint32_t s = 0; s < samples; ++s) {
    const auto i = static_cast<std::uint32_t>(rng.next_below(n));
    const auto j = static_cast<std::uint32_t>(rng.next_below(n));
    if (bool(rel(j, i)) != g.edge(i, j))
      throw Error("build_from_relation: relation is not symmetric at (" + std::to_string(i) + "," +
                  std::to_string(j) + ")");
  }
  return g;
}

inline std::uint32_t masked_intersection_count(std::span<const std::uint64_t> a,
                                               std::span<const std::uint64_t> b,
                                               std::span<const std::uint64_t> mask) {
  std::uint32_t c = 0;
  for (std::size_t w = 0; w < mask.size(); ++w) c += std::popcount(a[w] & b[w] & mask[w]);
  return c;
}

/// |{w in U : w~u and w~v}|. u = v gives the degree of u into U.
inline std::uint32_t common_neighbors(const DenseGraph& g, std::uint32_t u, std::uint32_t v,
                                      const VertexSet& within) {
  if (u >= g.n() || v >= g.n()) throw Error("common_neighbors: vertex out of range");
  const auto mask = within.to_mask(g.n());
  return masked_intersection_count(g.row(u), g.row(v), mask);
}

/// Max-degree pruning: drops every vertex whose neighbor count inside U lies
/// outside [lo_factor*|U|d/n, hi_factor*|U|d/n]. The default factors 1/2 and
/// 2 are the ones the degree bounds are stated with.
inline VertexSet prune_by_degree(const DenseGraph& g, const VertexSet& subset, std::uint32_t d,
                                 std::uint32_t n, double lo_factor = 0.5, double hi_factor = 2.0) {
  if (subset.empty()) throw Error("prune_by_degree: empty subset");
  if (n == 0) throw Error("prune_by_degree: n must be positive");
  const auto mask = subset.to_mask(g.n());
  const long double base = static_cast<long double>(subset.size()) * d / n;
  const long double lo = static_cast<long double>(lo_factor) * base;
  const long double hi = static_cast<long double>(hi_factor) * base;
  std::vector<std::uint32_t> kept;
  kept.reserve(subset.size());
  for (std::uint32_t v : subset) {
    std::uint32_t deg = 0;
    const auto r = g.row(v);
    for (std::size_t w = 0; w < mask.size(); ++w) deg += std::popcount(r[w] & mask[w]);
    const long double degl = deg;
    if (degl < lo || degl > hi) continue;
    kept.push_back(v);
  }
  return VertexSet(std::move(kept));
}

/// Compact relabeled copy of G[U]; vertex i of the result is subset[i].
inline DenseGraph induced_subgraph(const DenseGraph& g, const VertexSet& subset) {
  if (subset.empty()) throw Error("induced_subgraph: empty subset");
  DenseGraph sub(static_cast<std::uint32_t>(subset.size()));
  for (std::uint32_t a = 0; a < subset.size(); ++a)
    for (std::uint32_t b = a; b < subset.size(); ++b)
      if (g.edge(subset[a], subset[b])) sub.set_edge(a, b);
  return sub;
}

}  // namespace vclab
