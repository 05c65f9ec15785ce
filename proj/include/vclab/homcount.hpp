#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "vclab/common.hpp"
#include "vclab/graph.hpp"
#include "vclab/pattern.hpp"

namespace vclab {

/// Enumeration work cap, measured in (candidate, constraint) evaluations.
/// Exceeding it raises BudgetError; a truncated count is never returned.
struct WorkBudget {
  std::uint64_t max_checks = 1'000'000'000;
};

namespace detail {

inline BigInt u128_to_bigint(unsigned __int128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

/// Bit rows of G[U] with vertices relabeled to 0..|U|-1.
struct InducedRows {
  std::uint32_t n = 0;
  std::uint32_t words = 0;
  std::vector<std::uint64_t> rows;
  std::vector<std::uint32_t> deg;

  InducedRows(const DenseGraph& g, const VertexSet& subset) {
    n = static_cast<std::uint32_t>(subset.size());
    words = (n + 63) / 64;
    rows.assign(std::size_t(n) * words, 0);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        if (g.edge(subset[a], subset[b])) rows[std::size_t(a) * words + (b >> 6)] |= std::uint64_t(1) << (b & 63);
    deg.resize(n);
    for (std::uint32_t a = 0; a < n; ++a) {
      std::uint32_t d = 0;
      for (std::uint32_t w = 0; w < words; ++w) d += std::popcount(rows[std::size_t(a) * words + w]);
      deg[a] = d;
    }
  }

  const std::uint64_t* row(std::uint32_t a) const { return rows.data() + std::size_t(a) * words; }

  bool edge(std::uint32_t a, std::uint32_t b) const { return (row(a)[b >> 6] >> (b & 63)) & 1; }

  std::uint32_t cn(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t c = 0;
    const std::uint64_t* ra = row(a);
    const std::uint64_t* rb = row(b);
    for (std::uint32_t w = 0; w < words; ++w) c += std::popcount(ra[w] & rb[w]);
    return c;
  }

  template <typename Fn>
  void for_each_neighbor(std::uint32_t a, Fn&& fn) const {
    const std::uint64_t* ra = row(a);
    for (std::uint32_t w = 0; w < words; ++w) {
      std::uint64_t bits = ra[w];
      while (bits) {
        fn((w << 6) + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  /// Fill out[] with this row's common-neighbor counts against every vertex.
  void cn_row(std::uint32_t a, std::vector<std::uint32_t>& out) const {
    out.resize(n);
    for (std::uint32_t b = 0; b < n; ++b) out[b] = cn(a, b);
  }
};

struct LevelConstraints {
  std::vector<std::uint32_t> required_to;   // earlier level indices
  std::vector<std::uint32_t> forbidden_to;
  std::vector<std::uint32_t> distinct_to;
  bool loop_required = false;
  bool loop_forbidden = false;
  std::uint32_t count() const {
    return static_cast<std::uint32_t>(required_to.size() + forbidden_to.size() + distinct_to.size()) +
           (loop_required ? 1u : 0u) + (loop_forbidden ? 1u : 0u);
  }
};

struct BruteForceState {
  std::uint32_t n_graph;
  std::uint32_t words;
  const DenseGraph* g;
  std::vector<LevelConstraints> levels;
  std::vector<std::vector<std::uint64_t>> domain_masks;  // per level
  std::vector<std::uint64_t> diag_mask;
  std::vector<std::uint32_t> assigned;
  std::uint64_t checks = 0;
  std::uint64_t max_checks = 0;
  unsigned __int128 count = 0;

  void charge(std::uint64_t units) {
    checks += units;
    if (checks > max_checks)
      throw BudgetError("count_pattern_bruteforce: work budget exceeded after " + std::to_string(checks) +
                            " constraint checks",
                        checks);
  }

  void dfs(std::uint32_t level, std::vector<std::uint64_t>& scratch) {
    const LevelConstraints& lc = levels[level];
    const std::size_t base = std::size_t(level) * words;
    std::uint64_t* cand = scratch.data() + base;
    std::copy_n(domain_masks[level].data(), words, cand);
    charge(std::uint64_t(std::max<std::uint32_t>(lc.count(), 1)) * n_graph);
    for (std::uint32_t p : lc.required_to) {
      const auto r = g->row(assigned[p]);
      for (std::uint32_t w = 0; w < words; ++w) cand[w] &= r[w];
    }
    for (std::uint32_t p : lc.forbidden_to) {
      const auto r = g->row(assigned[p]);
      for (std::uint32_t w = 0; w < words; ++w) cand[w] &= ~r[w];
    }
    for (std::uint32_t p : lc.distinct_to) {
      const std::uint32_t v = assigned[p];
      cand[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
    }
    if (lc.loop_required)
      for (std::uint32_t w = 0; w < words; ++w) cand[w] &= diag_mask[w];
    if (lc.loop_forbidden)
      for (std::uint32_t w = 0; w < words; ++w) cand[w] &= ~diag_mask[w];

    if (level + 1 == levels.size()) {
      std::uint32_t leaf = 0;
      for (std::uint32_t w = 0; w < words; ++w) leaf += std::popcount(cand[w]);
      count += leaf;
      return;
    }
    for (std::uint32_t w = 0; w < words; ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        assigned[level] = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        dfs(level + 1, scratch);
      }
    }
  }
};

}  // namespace detail

/// Exact count of maps from pattern vertices into per-role candidate sets
/// satisfying every constraint. Backtracking with earliest-constraint
/// pruning; the result equals the naive |domain|^k enumeration.
inline BigInt count_pattern_bruteforce_domains(const DenseGraph& g,
                                               const std::vector<VertexSet>& role_domains,
                                               const Pattern& pat, const WorkBudget& budget = {}) {
  if (role_domains.size() != pat.k) throw Error("count_pattern_bruteforce: one domain per pattern vertex required");

  // roles touched by no constraint at all contribute a plain |domain| factor
  std::vector<std::uint32_t> constraint_degree(pat.k, 0);
  const auto see = [&](const std::vector<IndexPair>& pairs) {
    for (const auto& [a, b] : pairs) {
      ++constraint_degree[a];
      if (b != a) ++constraint_degree[b];
    }
  };
  see(pat.required);
  see(pat.forbidden);
  see(pat.distinct);

  BigInt isolated_factor = 1;
  std::vector<std::uint8_t> in_search;
  for (std::uint8_t r = 0; r < pat.k; ++r) {
    if (constraint_degree[r] == 0)
      isolated_factor *= BigInt(role_domains[r].size());
    else
      in_search.push_back(r);
  }
  if (isolated_factor == 0) return 0;
  if (in_search.empty()) return isolated_factor;

  // greedy most-constrained-first ordering; the count is order-independent
  std::vector<std::uint8_t> order;
  std::vector<bool> placed(pat.k, false);
  const auto ties_to_placed = [&](std::uint8_t r) {
    std::uint32_t ties = 0;
    const auto scan = [&](const std::vector<IndexPair>& pairs) {
      for (const auto& [a, b] : pairs) {
        if (a == r && (placed[b] || b == r)) ++ties;
        else if (b == r && placed[a]) ++ties;
      }
    };
    scan(pat.required);
    scan(pat.forbidden);
    scan(pat.distinct);
    return ties;
  };
  while (order.size() < in_search.size()) {
    std::uint8_t best = 255;
    std::uint32_t best_ties = 0, best_deg = 0;
    for (std::uint8_t r : in_search) {
      if (placed[r]) continue;
      const std::uint32_t ties = ties_to_placed(r);
      if (best == 255 || ties > best_ties || (ties == best_ties && constraint_degree[r] > best_deg)) {
        best = r;
        best_ties = ties;
        best_deg = constraint_degree[r];
      }
    }
    placed[best] = true;
    order.push_back(best);
  }

  detail::BruteForceState state;
  state.g = &g;
  state.n_graph = g.n();
  state.words = g.words();
  state.max_checks = budget.max_checks;
  state.assigned.assign(order.size(), 0);
  state.diag_mask.assign(state.words, 0);
  for (std::uint32_t v = 0; v < g.n(); ++v)
    if (g.edge(v, v)) state.diag_mask[v >> 6] |= std::uint64_t(1) << (v & 63);

  std::vector<std::uint32_t> level_of(pat.k, UINT32_MAX);
  for (std::uint32_t l = 0; l < order.size(); ++l) level_of[order[l]] = l;
  state.levels.resize(order.size());
  state.domain_masks.resize(order.size());
  for (std::uint32_t l = 0; l < order.size(); ++l)
    state.domain_masks[l] = role_domains[order[l]].to_mask(g.n());

  const auto wire = [&](const std::vector<IndexPair>& pairs, auto member, bool loop_means_required) {
    for (const auto& [a, b] : pairs) {
      if (a == b) {
        auto& lc = state.levels[level_of[a]];
        (loop_means_required ? lc.loop_required : lc.loop_forbidden) = true;
        continue;
      }
      const std::uint32_t la = level_of[a], lb = level_of[b];
      const std::uint32_t later = std::max(la, lb), earlier = std::min(la, lb);
      (state.levels[later].*member).push_back(earlier);
    }
  };
  wire(pat.required, &detail::LevelConstraints::required_to, true);
  wire(pat.forbidden, &detail::LevelConstraints::forbidden_to, false);
  wire(pat.distinct, &detail::LevelConstraints::distinct_to, false);

  std::vector<std::uint64_t> scratch(std::size_t(order.size()) * state.words, 0);
  state.dfs(0, scratch);
  return detail::u128_to_bigint(state.count) * isolated_factor;
}

inline BigInt count_pattern_bruteforce(const DenseGraph& g, const VertexSet& subset, const Pattern& pat,
                                       const WorkBudget& budget = {}) {
  return count_pattern_bruteforce_domains(g, std::vector<VertexSet>(pat.k, subset), pat, budget);
}

/// P_k(U): labeled, possibly degenerate paths with k edges, as the quadratic
/// form 1^T A_U^k 1 in exact integer arithmetic.
inline BigInt count_paths(const DenseGraph& g, const VertexSet& subset, std::uint32_t k) {
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  std::vector<BigInt> v(ir.n, 1), next(ir.n);
  for (std::uint32_t step = 0; step < k; ++step) {
    for (std::uint32_t i = 0; i < ir.n; ++i) {
      BigInt acc = 0;
      ir.for_each_neighbor(i, [&](std::uint32_t j) { acc += v[j]; });
      next[i] = std::move(acc);
    }
    v.swap(next);
  }
  return std::accumulate(v.begin(), v.end(), BigInt(0));
}

namespace detail {

// Exact trace of A_U^m via half powers: tr(A^{a+b}) = <A^a, A^b>_F. Matrix
// entries of A^j are bounded by n^{j-1}, so an int64 fast path covers the
// desk scale; anything larger falls back to arbitrary precision.
inline BigInt cycle_trace(const InducedRows& ir, std::uint32_t m) {
  const std::uint32_t n = ir.n;
  if (m == 1) {
    std::uint32_t loops = 0;
    for (std::uint32_t i = 0; i < n; ++i) loops += ir.edge(i, i);
    return loops;
  }
  const std::uint32_t a = m / 2, b = m - a;

  bool int64_safe = true;
  {
    unsigned __int128 bound = 1;
    for (std::uint32_t j = 0; j + 1 < b; ++j) {
      bound *= n;
      if (bound > (unsigned __int128)1 << 62) {
        int64_safe = false;
        break;
      }
    }
  }

  if (int64_safe) {
    const auto multiply_by_adj = [&](const std::vector<std::int64_t>& x) {
      std::vector<std::int64_t> out(std::size_t(n) * n, 0);
      for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t u = 0; u < n; ++u) {
          const std::int64_t val = x[std::size_t(i) * n + u];
          if (!val) continue;
          ir.for_each_neighbor(u, [&](std::uint32_t v) { out[std::size_t(i) * n + v] += val; });
        }
      return out;
    };
    std::vector<std::int64_t> power(std::size_t(n) * n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      ir.for_each_neighbor(i, [&](std::uint32_t j) { power[std::size_t(i) * n + j] = 1; });
    std::vector<std::int64_t> pa;
    for (std::uint32_t j = 1; j <= b; ++j) {
      if (j == a) pa = power;
      if (j == b) break;
      power = multiply_by_adj(power);
    }
    const std::vector<std::int64_t>& pb = power;
    unsigned __int128 trace = 0;
    for (std::size_t idx = 0; idx < pa.size(); ++idx)
      trace += (unsigned __int128)pa[idx] * (unsigned __int128)pb[idx];
    return u128_to_bigint(trace);
  }

  const auto multiply_by_adj_big = [&](const std::vector<BigInt>& x) {
    std::vector<BigInt> out(std::size_t(n) * n, BigInt(0));
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t u = 0; u < n; ++u) {
        const BigInt& val = x[std::size_t(i) * n + u];
        if (val == 0) continue;
        ir.for_each_neighbor(u, [&](std::uint32_t v) { out[std::size_t(i) * n + v] += val; });
      }
    return out;
  };
  std::vector<BigInt> power(std::size_t(n) * n, BigInt(0));
  for (std::uint32_t i = 0; i < n; ++i)
    ir.for_each_neighbor(i, [&](std::uint32_t j) { power[std::size_t(i) * n + j] = 1; });
  std::vector<BigInt> pa;
  for (std::uint32_t j = 1; j <= b; ++j) {
    if (j == a) pa = power;
    if (j == b) break;
    power = multiply_by_adj_big(power);
  }
  BigInt trace = 0;
  for (std::size_t idx = 0; idx < pa.size(); ++idx) trace += pa[idx] * power[idx];
  return trace;
}

}  // namespace detail

/// C_m(U): labeled, possibly degenerate closed walks of length m, tr(A_U^m).
inline BigInt count_cycles(const DenseGraph& g, const VertexSet& subset, std::uint32_t m) {
  if (m == 0) throw Error("count_cycles: length must be >= 1");
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  return detail::cycle_trace(ir, m);
}

/// H1(U) = sum_u (A_U^4)_{uu} deg_U(u): pendant-edge 4-cycles.
inline BigInt count_H1(const DenseGraph& g, const VertexSet& subset) {
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  unsigned __int128 total = 0;
  std::vector<std::uint32_t> cn_row;
  for (std::uint32_t u = 0; u < ir.n; ++u) {
    ir.cn_row(u, cn_row);
    std::uint64_t closed4 = 0;  // (A^4)_{uu} = sum_w cn(u,w)^2
    for (std::uint32_t w = 0; w < ir.n; ++w) closed4 += std::uint64_t(cn_row[w]) * cn_row[w];
    total += (unsigned __int128)closed4 * ir.deg[u];
  }
  return detail::u128_to_bigint(total);
}

/// H2(U) = sum over ordered pairs (u,y) of cn_U(u,y)^3: labeled K_{2,3}.
inline BigInt count_H2(const DenseGraph& g, const VertexSet& subset) {
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  unsigned __int128 total = 0;
  std::vector<std::uint32_t> cn_row;
  for (std::uint32_t u = 0; u < ir.n; ++u) {
    ir.cn_row(u, cn_row);
    for (std::uint32_t y = 0; y < ir.n; ++y) {
      const unsigned __int128 c = cn_row[y];
      total += c * c * c;
    }
  }
  return detail::u128_to_bigint(total);
}

/// H3(U) via the square decomposition: with
///   f(y,z,v) = sum_u A_U[z,u] A_U[u,v] cn_U(y,u),
/// H3(U) = sum over (y,z,v) with y~z of f(y,z,v)^2.
inline BigInt count_H3(const DenseGraph& g, const VertexSet& subset, const WorkBudget& budget = {}) {
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  const std::uint64_t max_deg = *std::max_element(ir.deg.begin(), ir.deg.end());
  const std::uint64_t work = std::uint64_t(ir.n) * max_deg * (max_deg * max_deg + ir.n);
  if (work > budget.max_checks)
    throw BudgetError("count_H3: estimated work " + std::to_string(work) + " exceeds budget", work);

  unsigned __int128 total = 0;
  std::vector<std::uint32_t> cn_y;
  std::vector<std::uint64_t> f(ir.n);
  for (std::uint32_t y = 0; y < ir.n; ++y) {
    ir.cn_row(y, cn_y);
    ir.for_each_neighbor(y, [&](std::uint32_t z) {
      std::fill(f.begin(), f.end(), 0);
      ir.for_each_neighbor(z, [&](std::uint32_t u) {
        const std::uint64_t val = cn_y[u];
        if (!val) return;
        ir.for_each_neighbor(u, [&](std::uint32_t v) { f[v] += val; });
      });
      for (std::uint32_t v = 0; v < ir.n; ++v) total += (unsigned __int128)f[v] * f[v];
    });
  }
  return detail::u128_to_bigint(total);
}

/// H3+(U): H3 with the extra edge x~u'. Eliminating x, x', v, z from the
/// pattern leaves
///   sum over (y,u,u') of t(y,u,u')^2 cn(y,u') cn(u,u'),
/// where t is the triple common-neighborhood size. Verified against brute
/// force; the brute-force pattern is the reference semantics.
inline BigInt count_H3plus(const DenseGraph& g, const VertexSet& subset, const WorkBudget& budget = {}) {
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  const std::uint64_t work = std::uint64_t(ir.n) * ir.n * (std::uint64_t(ir.n) * ir.words / 8 + 2);
  if (work > budget.max_checks)
    throw BudgetError("count_H3plus: estimated work " + std::to_string(work) + " exceeds budget", work);

  unsigned __int128 total = 0;
  std::vector<std::uint32_t> cn_up;
  std::vector<std::uint64_t> tri(ir.words);
  for (std::uint32_t up = 0; up < ir.n; ++up) {
    ir.cn_row(up, cn_up);
    const std::uint64_t* r_up = ir.row(up);
    for (std::uint32_t y = 0; y < ir.n; ++y) {
      const std::uint64_t cyu = cn_up[y];
      if (!cyu) continue;
      const std::uint64_t* r_y = ir.row(y);
      for (std::uint32_t w = 0; w < ir.words; ++w) tri[w] = r_y[w] & r_up[w];
      for (std::uint32_t u = 0; u < ir.n; ++u) {
        const std::uint64_t cuu = cn_up[u];
        if (!cuu) continue;
        const std::uint64_t* r_u = ir.row(u);
        std::uint32_t t = 0;
        for (std::uint32_t w = 0; w < ir.words; ++w) t += std::popcount(tri[w] & r_u[w]);
        total += (unsigned __int128)(std::uint64_t(t) * t) * (cyu * cuu);
      }
    }
  }
  return detail::u128_to_bigint(total);
}

/// H3-(U): H3 with x and u' identified. Nested neighborhood sums
///   sum_x sum_{y~x} sum_{z in N(x) cap N(y)} sum_{u in N(x) cap N(z)}
///     cn_U(x,u) cn_U(x,y).
inline BigInt count_H3minus(const DenseGraph& g, const VertexSet& subset) {
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  unsigned __int128 total = 0;
  std::vector<std::uint32_t> cn_x;
  std::vector<std::uint64_t> nxy(ir.words), nxz(ir.words);
  for (std::uint32_t x = 0; x < ir.n; ++x) {
    ir.cn_row(x, cn_x);
    const std::uint64_t* r_x = ir.row(x);
    ir.for_each_neighbor(x, [&](std::uint32_t y) {
      const std::uint64_t cxy = cn_x[y];
      if (!cxy) return;
      const std::uint64_t* r_y = ir.row(y);
      for (std::uint32_t w = 0; w < ir.words; ++w) nxy[w] = r_x[w] & r_y[w];
      for (std::uint32_t w = 0; w < ir.words; ++w) {
        std::uint64_t bits = nxy[w];
        while (bits) {
          const std::uint32_t z = (w << 6) + std::countr_zero(bits);
          bits &= bits - 1;
          const std::uint64_t* r_z = ir.row(z);
          for (std::uint32_t w2 = 0; w2 < ir.words; ++w2) nxz[w2] = r_x[w2] & r_z[w2];
          std::uint64_t inner = 0;
          for (std::uint32_t w2 = 0; w2 < ir.words; ++w2) {
            std::uint64_t ubits = nxz[w2];
            while (ubits) {
              inner += cn_x[(w2 << 6) + std::countr_zero(ubits)];
              ubits &= ubits - 1;
            }
          }
          total += (unsigned __int128)inner * cxy;
        }
      }
    });
  }
  return detail::u128_to_bigint(total);
}

/// H4(U) = sum over ordered adjacent pairs (z,u') of ((A_U^3)_{z,u'})^2:
/// chorded 6-cycles.
inline BigInt count_H4(const DenseGraph& g, const VertexSet& subset) {
  if (subset.empty()) return 0;
  const detail::InducedRows ir(g, subset);
  unsigned __int128 total = 0;
  std::vector<std::uint32_t> cn_z;
  for (std::uint32_t z = 0; z < ir.n; ++z) {
    ir.cn_row(z, cn_z);
    ir.for_each_neighbor(z, [&](std::uint32_t up) {
      std::uint64_t walks3 = 0;  // (A^3)_{z,u'}
      ir.for_each_neighbor(up, [&](std::uint32_t w) { walks3 += cn_z[w]; });
      total += (unsigned __int128)walks3 * walks3;
    });
  }
  return detail::u128_to_bigint(total);
}

/// gamma(U): the largest common-neighbor count over unordered distinct pairs.
inline std::uint32_t max_common_neighbors(const DenseGraph& g, const VertexSet& subset) {
  if (subset.size() < 2) throw Error("max_common_neighbors: need at least two vertices");
  const detail::InducedRows ir(g, subset);
  std::uint32_t best = 0;
  for (std::uint32_t a = 0; a < ir.n; ++a)
    for (std::uint32_t b = a + 1; b < ir.n; ++b) best = std::max(best, ir.cn(a, b));
  return best;
}

/// Exact counts for every named configuration.
using ConfigCensus = std::map<std::string, BigInt>;

inline ConfigCensus compute_census(const DenseGraph& g, const VertexSet& subset,
                                   const WorkBudget& budget = {}) {
  ConfigCensus census;
  for (std::uint32_t k = 1; k <= 4; ++k) census["P" + std::to_string(k)] = count_paths(g, subset, k);
  for (std::uint32_t m = 1; m <= 6; ++m) census["C" + std::to_string(m)] = count_cycles(g, subset, m);
  census["H1"] = count_H1(g, subset);
  census["H2"] = count_H2(g, subset);
  census["H3"] = count_H3(g, subset, budget);
  census["H3plus"] = count_H3plus(g, subset, budget);
  census["H3minus"] = count_H3minus(g, subset);
  census["H4"] = count_H4(g, subset);
  census["K23"] = census["H2"];
  const detail::InducedRows ir(g, subset);
  BigInt k13 = 0, k14 = 0;
  for (std::uint32_t v = 0; v < ir.n; ++v) {
    const BigInt d = ir.deg[v];
    k13 += d * d * d;
    k14 += d * d * d * d;
  }
  census["K13"] = k13;
  census["K14"] = k14;
  return census;
}

}  // namespace vclab
