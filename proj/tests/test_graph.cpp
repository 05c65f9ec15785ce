#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "vclab/builders.hpp"
#include "vclab/cache.hpp"
#include "vclab/graph.hpp"
#include "vclab/spectral.hpp"

using namespace vclab;

namespace {

DenseGraph make_cycle(std::uint32_t n) {
  return build_from_relation(n, [n](std::uint32_t i, std::uint32_t j) {
    const std::uint32_t diff = (i + n - j) % n;
    return diff == 1 || diff == n - 1;
  });
}

DenseGraph make_complete(std::uint32_t n) {
  return build_from_relation(n, [](std::uint32_t i, std::uint32_t j) { return i != j; });
}

/// Circulant graph on Z_n with the given symmetric offset set.
DenseGraph make_circulant(std::uint32_t n, std::vector<std::uint32_t> offsets) {
  return build_from_relation(n, [n, offsets](std::uint32_t i, std::uint32_t j) {
    const std::uint32_t diff = (i + n - j) % n;
    for (std::uint32_t o : offsets)
      if (diff == o || diff == n - o) return true;
    return false;
  });
}

}  // namespace

TEST_CASE("build_from_relation basics") {
  const DenseGraph k3 = make_complete(3);
  CHECK(k3.edge(0, 1));
  CHECK_FALSE(k3.edge(0, 0));
  CHECK(k3.edge_count_nonloop() == 3);

  const DenseGraph empty = build_from_relation(4, [](std::uint32_t, std::uint32_t) { return false; });
  CHECK(empty.edge_count_nonloop() == 0);
  CHECK(empty.regular_degree() == 0);

  const DenseGraph loops = build_from_relation(2, [](std::uint32_t, std::uint32_t) { return true; });
  CHECK(loops.edge(0, 0));
  CHECK(loops.edge(1, 1));
  CHECK(loops.edge(0, 1));
  CHECK(loops.degree(0) == 2);  // loop counts once
}

TEST_CASE("asymmetric relation is detected on the sample") {
  CHECK_THROWS_AS(build_from_relation(20, [](std::uint32_t i, std::uint32_t j) { return i < j; }), Error);
}

TEST_CASE("spectral profile of K3") {
  const auto p = spectral_profile(make_complete(3));
  REQUIRE(p.eigenvalues.size() == 3);
  CHECK(p.eigenvalues[0] == Catch::Approx(2.0).margin(1e-9));
  CHECK(p.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-9));
  CHECK(p.eigenvalues[2] == Catch::Approx(-1.0).margin(1e-9));
  REQUIRE(p.d.has_value());
  CHECK(*p.d == 2);
  CHECK(p.lambda == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("spectral profile of C4 matches its known spectrum") {
  // 2 cos(2 pi k / 4): eigenvalues 2, 0, 0, -2
  const auto p = spectral_profile(make_cycle(4));
  CHECK(p.eigenvalues[0] == Catch::Approx(2.0).margin(1e-9));
  CHECK(p.eigenvalues[1] == Catch::Approx(0.0).margin(1e-9));
  CHECK(p.eigenvalues[2] == Catch::Approx(0.0).margin(1e-9));
  CHECK(p.eigenvalues[3] == Catch::Approx(-2.0).margin(1e-9));
  CHECK(*p.d == 2);
  CHECK(p.lambda == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("edgeless graph has an all-zero profile") {
  const DenseGraph g = build_from_relation(4, [](std::uint32_t, std::uint32_t) { return false; });
  const auto p = spectral_profile(g);
  for (double e : p.eigenvalues) CHECK(e == Catch::Approx(0.0).margin(1e-12));
  CHECK(*p.d == 0);
  CHECK(p.lambda == 0.0);
}

TEST_CASE("trace identities across test graphs") {
  const double tol = 1e-7;
  for (const DenseGraph& g : {make_cycle(6), make_complete(5), dot_product_graph(3, 2)}) {
    const auto p = spectral_profile(g);
    const double trace = std::accumulate(p.eigenvalues.begin(), p.eigenvalues.end(), 0.0);
    CHECK(trace == Catch::Approx(double(g.loop_count())).margin(tol * g.n()));
    double sq = 0, walks2 = 0;
    for (double e : p.eigenvalues) sq += e * e;
    for (std::uint32_t i = 0; i < g.n(); ++i) walks2 += g.degree(i);
    CHECK(sq == Catch::Approx(walks2).margin(tol * g.n()));
    if (p.d) CHECK(std::abs(p.eigenvalues[0] - double(*p.d)) < 1e-7);
  }
}

TEST_CASE("common_neighbors") {
  const DenseGraph k3 = make_complete(3);
  const VertexSet all = VertexSet::full(3);
  CHECK(common_neighbors(k3, 0, 1, all) == 1);
  CHECK(common_neighbors(k3, 0, 0, all) == 2);  // degree into U

  const DenseGraph empty = build_from_relation(4, [](std::uint32_t, std::uint32_t) { return false; });
  CHECK(common_neighbors(empty, 0, 1, VertexSet::full(4)) == 0);

  // K_{2,3}: parts {0,1} and {2,3,4}
  const DenseGraph k23 = build_from_relation(5, [](std::uint32_t i, std::uint32_t j) {
    return (i < 2 && j >= 2) || (j < 2 && i >= 2);
  });
  CHECK(common_neighbors(k23, 0, 1, VertexSet::full(5)) == 3);
}

TEST_CASE("prune_by_degree on hand-checked cases") {
  // U = V of a regular graph: every degree equals |U|d/n exactly, nothing pruned
  const DenseGraph c6 = make_cycle(6);
  const VertexSet all = VertexSet::full(6);
  CHECK(prune_by_degree(c6, all, 2, 6) == all);

  // C6 with three consecutive vertices: degrees 1,2,1 inside U, bounds [0.5, 2]
  const VertexSet u({0, 1, 2});
  CHECK(prune_by_degree(c6, u, 2, 6) == u);

  CHECK_THROWS_AS(prune_by_degree(c6, VertexSet{}, 2, 6), Error);
}

TEST_CASE("non-regular graphs have no d and the caller must refuse to prune") {
  // K3 plus isolated vertex
  const DenseGraph g = build_from_relation(4, [](std::uint32_t i, std::uint32_t j) {
    return i != j && i < 3 && j < 3;
  });
  CHECK_FALSE(spectral_profile(g).d.has_value());
}

TEST_CASE("prune_by_degree keeps exactly the vertices inside the degree window") {
  Rng rng(99);
  const DenseGraph graphs[] = {make_circulant(24, {1, 2, 3}), distance_graph(7, 2),
                               dot_product_graph(5, 2)};
  for (const DenseGraph& g : graphs) {
    const auto d = g.regular_degree();
    REQUIRE(d.has_value());
    for (int it = 0; it < 25; ++it) {
      std::vector<std::uint32_t> pool(g.n());
      std::iota(pool.begin(), pool.end(), 0u);
      const std::size_t size = 2 + rng.next_below(g.n() - 2);
      const VertexSet u(rng.sample(pool, size));
      const VertexSet pruned = prune_by_degree(g, u, *d, g.n());
      const double lo = double(u.size()) * *d / (2.0 * g.n());
      const double hi = 2.0 * double(u.size()) * *d / g.n();
      for (std::uint32_t v : u) {
        const double deg = common_neighbors(g, v, v, u);
        const bool inside = deg >= lo && deg <= hi;
        REQUIRE(pruned.contains(v) == inside);
      }
      // determinism
      REQUIRE(prune_by_degree(g, u, *d, g.n()) == pruned);
    }
  }
}

TEST_CASE("prune_by_degree can cascade on small subsets") {
  // Degree loss from removed vertices can push survivors below the window
  // recomputed from the smaller set; pinned counterexample on C8.
  const DenseGraph c8 = make_cycle(8);
  const VertexSet u({0, 1, 2, 5});          // degrees into U: 1, 2, 1, 0; window [0.5, 2]
  const VertexSet u1 = prune_by_degree(c8, u, 2, 8);
  CHECK(u1 == VertexSet({0, 1, 2}));        // vertex 5 falls below |U|d/2n
  const VertexSet u2 = prune_by_degree(c8, u1, 2, 8);
  CHECK(u2 == VertexSet({0, 2}));           // window shrinks to [0.375, 1.5]; vertex 1 now exceeds it
}

TEST_CASE("graph cache round-trip is bit-identical") {
  const DenseGraph g = dot_product_graph(3, 2);
  const Json doc = graph_to_json(g);
  CHECK(doc["schema"] == "vclab-graph-v1");
  const DenseGraph loaded = graph_from_json(doc);
  CHECK(loaded.n() == g.n());
  CHECK(graph_hash(loaded) == graph_hash(g));
  for (std::uint32_t i = 0; i < g.n(); ++i)
    for (std::uint32_t j = 0; j < g.n(); ++j) REQUIRE(loaded.edge(i, j) == g.edge(i, j));
  CHECK(loaded.labels().size() == g.labels().size());
  CHECK(loaded.meta().family == "dotproduct");
}

TEST_CASE("base64 round trip") {
  Rng rng(7);
  for (std::size_t len : {0u, 1u, 2u, 3u, 17u, 64u}) {
    std::vector<std::uint8_t> data(len);
    for (auto& b : data) b = static_cast<std::uint8_t>(rng.next_below(256));
    CHECK(base64_decode(base64_encode(data)) == data);
  }
  CHECK_THROWS_AS(base64_decode("abc"), Error);
  CHECK_THROWS_AS(base64_decode("a==="), Error);
}

TEST_CASE("graph cache rejects corrupted documents") {
  const DenseGraph g = dot_product_graph(3, 2);
  Json doc = graph_to_json(g);

  Json bad_schema = doc;
  bad_schema["schema"] = "vclab-graph-v0";
  CHECK_THROWS_AS(graph_from_json(bad_schema), Error);

  Json bad_loops = doc;
  bad_loops["loops"] = false;
  CHECK_THROWS_AS(graph_from_json(bad_loops), Error);

  Json bad_edges = doc;
  bad_edges["edges"] = base64_encode({0x01, 0x02});
  CHECK_THROWS_AS(graph_from_json(bad_edges), Error);

  // asymmetric packed bytes
  DenseGraph asym(2);
  asym.set_edge(0, 1);
  auto bytes = asym.packed_rows();
  bytes[1] = 0;  // clear row 1 -> (0,1) present but (1,0) missing
  CHECK_THROWS_AS(DenseGraph::from_packed_rows(2, bytes), Error);
}

TEST_CASE("spectral size limit") {
  const DenseGraph g(kMaxSpectralN + 1);
  CHECK_THROWS_AS(spectral_profile(g), Error);
  CHECK_THROWS_AS(spectral_profile(make_complete(3), -1.0), Error);
}

TEST_CASE("spectrum cache document") {
  const DenseGraph g = dot_product_graph(3, 2);
  const auto p = spectral_profile(g);
  const auto noloop = spectral_profile(g.without_loops());
  const Json doc = spectrum_to_json(p, graph_hash(g), noloop.lambda);
  CHECK(doc["schema"] == "vclab-spectrum-v1");
  CHECK(doc["d"] == 3);
  CHECK(doc["eigenvalues"].size() == 8);
  CHECK(doc.contains("lambda-noloop"));
}
