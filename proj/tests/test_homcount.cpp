#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "vclab/builders.hpp"
#include "vclab/graph.hpp"
#include "vclab/homcount.hpp"
#include "vclab/pattern.hpp"
#include "vclab/prng.hpp"

using namespace vclab;

namespace {

// Test-only oracle: literal |U|^k odometer enumeration, no pruning, no
// shared code with the backtracker.
BigInt naive_count(const DenseGraph& g, const VertexSet& u, const Pattern& pat) {
  if (u.empty()) return 0;
  std::vector<std::size_t> odo(pat.k, 0);
  BigInt count = 0;
  while (true) {
    bool ok = true;
    for (const auto& [a, b] : pat.required)
      if (!g.edge(u[odo[a]], u[odo[b]])) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& [a, b] : pat.forbidden)
        if (g.edge(u[odo[a]], u[odo[b]])) {
          ok = false;
          break;
        }
    if (ok)
      for (const auto& [a, b] : pat.distinct)
        if (u[odo[a]] == u[odo[b]]) {
          ok = false;
          break;
        }
    if (ok) ++count;
    std::size_t pos = 0;
    while (pos < pat.k && ++odo[pos] == u.size()) odo[pos++] = 0;
    if (pos == pat.k) break;
  }
  return count;
}

DenseGraph make_complete(std::uint32_t n) {
  return build_from_relation(n, [](std::uint32_t i, std::uint32_t j) { return i != j; });
}
DenseGraph make_cycle(std::uint32_t n) {
  return build_from_relation(n, [n](std::uint32_t i, std::uint32_t j) {
    const std::uint32_t diff = (i + n - j) % n;
    return diff == 1 || diff == n - 1;
  });
}
DenseGraph make_k23() {
  return build_from_relation(5, [](std::uint32_t i, std::uint32_t j) {
    return (i < 2 && j >= 2) || (j < 2 && i >= 2);
  });
}
DenseGraph make_edgeless(std::uint32_t n) {
  return build_from_relation(n, [](std::uint32_t, std::uint32_t) { return false; });
}

}  // namespace

TEST_CASE("backtracker equals the naive odometer oracle") {
  Rng rng(505);
  const Pattern patterns[] = {path_pattern(1), path_pattern(2), cycle_pattern(3), cycle_pattern(4),
                              h1_pattern(), h2_pattern(), h4_pattern(), h3minus_pattern(),
                              star_pattern(3)};
  for (int it = 0; it < 12; ++it) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng.next_below(3));
    const DenseGraph g = random_graph(n, 0.2 + 0.2 * double(rng.next_below(4)), rng.next_u64());
    const VertexSet all = VertexSet::full(n);
    for (const Pattern& pat : patterns) REQUIRE(count_pattern_bruteforce(g, all, pat) == naive_count(g, all, pat));
  }
}

TEST_CASE("brute force on the worked examples") {
  const DenseGraph k3 = make_complete(3);
  const VertexSet all3 = VertexSet::full(3);
  CHECK(count_pattern_bruteforce(k3, all3, path_pattern(1)) == 6);
  CHECK(count_pattern_bruteforce(k3, all3, cycle_pattern(3)) == 6);  // tr(A^3), spectrum (2,-1,-1)
  CHECK(count_pattern_bruteforce(make_edgeless(4), VertexSet::full(4), path_pattern(1)) == 0);
}

TEST_CASE("forbidden edges and distinctness constraints") {
  const DenseGraph k4 = make_complete(4);
  const VertexSet all = VertexSet::full(4);
  // pairs with a required edge: 12; forbidding a loopless third role's edge
  Pattern p(3, {{0, 1}}, {{1, 2}});
  CHECK(count_pattern_bruteforce(k4, all, p) == naive_count(k4, all, p));
  // distinctness: ordered triangles with all roles distinct = 4*3*2
  Pattern tri(3, {{0, 1}, {1, 2}, {0, 2}}, {}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(count_pattern_bruteforce(k4, all, tri) == 24);
  // loop constraints: required loop on a loopless graph
  Pattern loop(1, {{0, 0}});
  CHECK(count_pattern_bruteforce(k4, all, loop) == 0);
  const DenseGraph dotg = dot_product_graph(3, 2);
  CHECK(count_pattern_bruteforce(dotg, VertexSet::full(8), loop) == 4);
}

TEST_CASE("adding constraints never increases the count") {
  Rng rng(606);
  for (int it = 0; it < 10; ++it) {
    const DenseGraph g = random_graph(7, 0.5, rng.next_u64());
    const VertexSet all = VertexSet::full(7);
    const Pattern base = h1_pattern();
    const BigInt base_count = count_pattern_bruteforce(g, all, base);
    Pattern more = base;
    more.forbidden.push_back({1, 4});
    more.normalize();
    CHECK(count_pattern_bruteforce(g, all, more) <= base_count);
    Pattern dist = base;
    dist.distinct.push_back({0, 2});
    dist.normalize();
    CHECK(count_pattern_bruteforce(g, all, dist) <= base_count);
  }
}

TEST_CASE("work budget exhaustion throws, never truncates") {
  const DenseGraph g = random_graph(12, 0.9, 1);
  WorkBudget tiny{100};
  CHECK_THROWS_AS(count_pattern_bruteforce(g, VertexSet::full(12), h3_pattern(), tiny), BudgetError);
}

TEST_CASE("count_paths") {
  const DenseGraph k3 = make_complete(3);
  const VertexSet all = VertexSet::full(3);
  CHECK(count_paths(k3, all, 1) == 6);
  CHECK(count_paths(k3, all, 2) == 12);  // sum of entries of A^2 = [[2,1,1],[1,2,1],[1,1,2]]
  CHECK(count_paths(k3, all, 0) == 3);
  const DenseGraph g = random_graph(9, 0.5, 77);
  const VertexSet all9 = VertexSet::full(9);
  for (std::uint32_t k = 0; k <= 4; ++k)
    CHECK(count_paths(g, all9, k) == naive_count(g, all9, path_pattern(k)));
}

TEST_CASE("count_cycles") {
  const DenseGraph k3 = make_complete(3);
  CHECK(count_cycles(k3, VertexSet::full(3), 3) == 6);
  const DenseGraph c4 = make_cycle(4);
  CHECK(count_cycles(c4, VertexSet::full(4), 4) == 32);  // 2^4 + (-2)^4
  // bipartite loopless: odd closed walks are impossible
  const DenseGraph c6 = make_cycle(6);
  for (std::uint32_t m : {1u, 3u, 5u}) CHECK(count_cycles(c6, VertexSet::full(6), m) == 0);
  const DenseGraph g = random_graph(8, 0.6, 3);
  const VertexSet all8 = VertexSet::full(8);
  for (std::uint32_t m = 1; m <= 6; ++m)
    CHECK(count_cycles(g, all8, m) == naive_count(g, all8, cycle_pattern(m)));
  // loops feed C1 and C2
  const DenseGraph dotg = dot_product_graph(3, 2);
  CHECK(count_cycles(dotg, VertexSet::full(8), 1) == 4);
}

TEST_CASE("cycle trace arbitrary-precision path agrees with a plain reference") {
  const DenseGraph g = random_graph(10, 0.5, 11);
  const VertexSet all = VertexSet::full(10);
  // m large enough that entries of A^{m/2} overflow int64, forcing the
  // arbitrary-precision matrices inside count_cycles
  const std::uint32_t m = 44;
  std::vector<BigInt> a(100, 0), power(100, 0);
  for (std::uint32_t i = 0; i < 10; ++i)
    for (std::uint32_t j = 0; j < 10; ++j) {
      a[i * 10 + j] = g.edge(i, j) ? 1 : 0;
      power[i * 10 + j] = i == j ? 1 : 0;
    }
  for (std::uint32_t step = 0; step < m; ++step) {
    std::vector<BigInt> next(100, 0);
    for (std::uint32_t i = 0; i < 10; ++i)
      for (std::uint32_t k = 0; k < 10; ++k)
        if (power[i * 10 + k] != 0)
          for (std::uint32_t j = 0; j < 10; ++j) next[i * 10 + j] += power[i * 10 + k] * a[k * 10 + j];
    power = std::move(next);
  }
  BigInt trace = 0;
  for (std::uint32_t i = 0; i < 10; ++i) trace += power[i * 10 + i];
  CHECK(count_cycles(g, all, m) == trace);
}

TEST_CASE("H1 frozen values and oracle") {
  const DenseGraph k3 = make_complete(3);
  CHECK(count_H1(k3, VertexSet::full(3)) == 36);
  const DenseGraph c4 = make_cycle(4);
  CHECK(count_H1(c4, VertexSet::full(4)) == 64);  // (A^4)_uu = 8, degree 2, 4 vertices
  CHECK(count_H1(make_edgeless(5), VertexSet::full(5)) == 0);
}

TEST_CASE("H2 frozen values") {
  CHECK(count_H2(make_k23(), VertexSet::full(5)) == 180);  // 4*27 + 9*8
  CHECK(count_H2(make_complete(3), VertexSet::full(3)) == 30);
  CHECK(count_H2(make_cycle(4), VertexSet::full(4)) == 64);
  CHECK(count_H2(make_edgeless(4), VertexSet::full(4)) == 0);
}

TEST_CASE("H3 frozen values") {
  CHECK(count_H3(make_complete(3), VertexSet::full(3)) == 84);
  CHECK(count_H3(make_cycle(4), VertexSet::full(4)) == 256);
  CHECK(count_H3(make_edgeless(4), VertexSet::full(4)) == 0);
}

TEST_CASE("H3plus frozen values and H3plus <= H3") {
  const DenseGraph k5 = make_complete(5);
  const VertexSet all = VertexSet::full(5);
  CHECK(count_H3plus(k5, all) == 9380);
  CHECK(count_H3(k5, all) == 11000);
  CHECK(count_H3plus(make_edgeless(4), VertexSet::full(4)) == 0);
  Rng rng(808);
  for (int it = 0; it < 8; ++it) {
    const DenseGraph g = random_graph(8, 0.5, rng.next_u64());
    const VertexSet u = VertexSet::full(8);
    CHECK(count_H3plus(g, u) <= count_H3(g, u));
  }
}

TEST_CASE("H3minus frozen values") {
  CHECK(count_H3minus(make_complete(4), VertexSet::full(4)) == 192);
  CHECK(count_H3minus(make_edgeless(4), VertexSet::full(4)) == 0);
  // pattern contains the triangle x,y,z
  CHECK(count_H3minus(make_cycle(6), VertexSet::full(6)) == 0);
  CHECK(count_H3minus(make_k23(), VertexSet::full(5)) == 0);
}

TEST_CASE("H4 frozen values") {
  CHECK(count_H4(make_complete(3), VertexSet::full(3)) == 54);  // 6 ordered adjacent pairs x 3^2
  CHECK(count_H4(make_edgeless(4), VertexSet::full(4)) == 0);
}

TEST_CASE("fast kernels equal brute force, including on loopy graphs") {
  Rng rng(909);
  std::vector<DenseGraph> graphs;
  graphs.push_back(random_graph(8, 0.5, 1));
  graphs.push_back(random_graph(8, 0.5, 2));
  graphs.push_back(dot_product_graph(3, 2));  // loops
  {
    DenseGraph loopy = random_graph(7, 0.4, 9);
    loopy.set_edge(2, 2);
    loopy.set_edge(5, 5);
    graphs.push_back(loopy);
  }
  for (const DenseGraph& g : graphs) {
    const VertexSet all = VertexSet::full(g.n());
    std::vector<std::uint32_t> pool(g.n());
    std::iota(pool.begin(), pool.end(), 0u);
    const std::vector<VertexSet> subsets = {all, VertexSet(rng.sample(pool, g.n() - 2))};
    for (const VertexSet& u : subsets) {
      CHECK(count_H1(g, u) == count_pattern_bruteforce(g, u, h1_pattern()));
      CHECK(count_H2(g, u) == count_pattern_bruteforce(g, u, h2_pattern()));
      CHECK(count_H3(g, u) == count_pattern_bruteforce(g, u, h3_pattern()));
      CHECK(count_H3plus(g, u) == count_pattern_bruteforce(g, u, h3plus_pattern()));
      CHECK(count_H3minus(g, u) == count_pattern_bruteforce(g, u, h3minus_pattern()));
      CHECK(count_H4(g, u) == count_pattern_bruteforce(g, u, h4_pattern()));
    }
  }
}

TEST_CASE("counts are monotone when U grows") {
  Rng rng(1010);
  const DenseGraph g = random_graph(10, 0.5, 13);
  std::vector<std::uint32_t> pool(10);
  std::iota(pool.begin(), pool.end(), 0u);
  for (int it = 0; it < 6; ++it) {
    auto small = rng.sample(pool, 5);
    auto extra = small;
    for (std::uint32_t v : pool)
      if (std::find(small.begin(), small.end(), v) == small.end() && extra.size() < 8) extra.push_back(v);
    const VertexSet u_small(small), u_big(extra);
    CHECK(count_H1(g, u_small) <= count_H1(g, u_big));
    CHECK(count_H2(g, u_small) <= count_H2(g, u_big));
    CHECK(count_H3(g, u_small) <= count_H3(g, u_big));
    CHECK(count_H4(g, u_small) <= count_H4(g, u_big));
    CHECK(count_paths(g, u_small, 3) <= count_paths(g, u_big, 3));
    CHECK(count_cycles(g, u_small, 4) <= count_cycles(g, u_big, 4));
  }
}

TEST_CASE("max_common_neighbors") {
  CHECK(max_common_neighbors(make_k23(), VertexSet::full(5)) == 3);
  CHECK(max_common_neighbors(make_edgeless(4), VertexSet::full(4)) == 0);
  CHECK(max_common_neighbors(dot_product_graph(3, 3), VertexSet::full(26)) == 3);  // = q^{t-2}
  CHECK_THROWS_AS(max_common_neighbors(make_k23(), VertexSet({0})), Error);
}

TEST_CASE("per-role domain restriction") {
  const DenseGraph g = dot_product_graph(3, 3);
  const VertexSet all = VertexSet::full(g.n());
  // restricting every role to U equals the subset counter
  std::vector<std::uint32_t> pool(g.n());
  std::iota(pool.begin(), pool.end(), 0u);
  Rng rng(111);
  const VertexSet u(rng.sample(pool, 12));
  const Pattern pat = h2_pattern();
  CHECK(count_pattern_bruteforce_domains(g, std::vector<VertexSet>(pat.k, u), pat) ==
        count_pattern_bruteforce(g, u, pat));
  // one empty domain kills the count
  std::vector<VertexSet> domains(pat.k, all);
  domains[2] = VertexSet{};
  CHECK(count_pattern_bruteforce_domains(g, domains, pat) == 0);
}

TEST_CASE("census is consistent with its parts") {
  const DenseGraph g = random_graph(9, 0.5, 21);
  const VertexSet all = VertexSet::full(9);
  const ConfigCensus census = compute_census(g, all);
  CHECK(census.at("P1") == count_paths(g, all, 1));
  CHECK(census.at("C3") == count_cycles(g, all, 3));
  CHECK(census.at("H1") == count_H1(g, all));
  CHECK(census.at("K23") == census.at("H2"));
  CHECK(census.at("K13") == count_pattern_bruteforce(g, all, star_pattern(3)));
  CHECK(census.at("K14") == count_pattern_bruteforce(g, all, star_pattern(4)));
  // P1(V) = 2|E| + loops
  CHECK(census.at("P1") == BigInt(2 * g.edge_count_nonloop() + g.loop_count()));
}

TEST_CASE("count_cycles rejects length zero") {
  CHECK_THROWS_AS(count_cycles(make_complete(3), VertexSet::full(3), 0), Error);
}

TEST_CASE("empty subset counts are zero") {
  const DenseGraph g = make_complete(4);
  CHECK(count_paths(g, VertexSet{}, 2) == 0);
  CHECK(count_cycles(g, VertexSet{}, 3) == 0);
  CHECK(count_H1(g, VertexSet{}) == 0);
  CHECK(count_pattern_bruteforce(g, VertexSet{}, h1_pattern()) == 0);
}

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS(Pattern(3, {{0, 3}}), Error);                    // index out of range
  CHECK_THROWS_AS(Pattern(3, {{0, 1}}, {{0, 1}}), Error);          // required and forbidden
  CHECK_THROWS_AS(Pattern(3, {{0, 1}}, {}, {{1, 1}}), Error);      // distinct needs two vertices
  CHECK_NOTHROW(Pattern(2, {{0, 0}}, {{1, 1}}));                   // loop constraints are fine
}
