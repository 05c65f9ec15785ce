#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vclab/builders.hpp"
#include "vclab/graph.hpp"
#include "vclab/prng.hpp"
#include "vclab/spectral.hpp"

using namespace vclab;

TEST_CASE("distance graph q=5 t=2: unit circle has 4 points") {
  const DenseGraph g = distance_graph(5, 2);
  CHECK(g.n() == 25);
  CHECK(g.regular_degree() == 4);
  CHECK_FALSE(g.has_loops());
  // circle points are (0,+-1),(+-1,0)
  const VertexSet all = VertexSet::full(25);
  CHECK(common_neighbors(g, 0, 0, all) == 4);
}

TEST_CASE("distance graph q=7 t=2: q=3 mod 4 gives q+1 circle points") {
  const DenseGraph g = distance_graph(7, 2);
  CHECK(g.n() == 49);
  CHECK(g.regular_degree() == 8);
}

TEST_CASE("dot product graph q=3 t=2") {
  const DenseGraph g = dot_product_graph(3, 2);
  CHECK(g.n() == 8);
  CHECK(g.regular_degree() == 3);
  // loops exactly on the unit circle (0,+-1),(+-1,0)
  std::vector<FieldVector> loop_labels;
  for (std::uint32_t v = 0; v < g.n(); ++v)
    if (g.edge(v, v)) loop_labels.push_back(g.labels()[v]);
  REQUIRE(loop_labels.size() == 4);
  for (const auto& label : loop_labels) CHECK(dot(label, label) == 1);
}

TEST_CASE("dot product graph q=3 t=3") {
  const DenseGraph g = dot_product_graph(3, 3);
  CHECK(g.n() == 26);
  CHECK(g.regular_degree() == 9);
}

TEST_CASE("dot product rows are exactly q^{t-1}, loop counted once") {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const DenseGraph g = dot_product_graph(q, 2);
    for (std::uint32_t v = 0; v < g.n(); ++v) REQUIRE(g.degree(v) == q);
  }
}

TEST_CASE("lambda bound 2 q^{(t-1)/2} on small members of both families") {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    for (int fam = 0; fam < 2; ++fam) {
      const DenseGraph g = fam == 0 ? distance_graph(q, 2) : dot_product_graph(q, 2);
      const auto p = spectral_profile(g);
      CHECK(p.lambda <= 2.0 * std::sqrt(double(q)) + 1e-6);
    }
  }
}

TEST_CASE("distance graph adjacency is translation invariant") {
  const std::uint32_t q = 5, t = 2;
  const DenseGraph g = distance_graph(q, t);
  const PrimeField field(q);
  const auto labels = g.labels();
  const auto index_of = [&](const FieldVector& v) {
    std::uint32_t code = 0;
    for (std::uint32_t c : v.coords) code = code * q + c;
    return code;
  };
  Rng rng(42);
  for (int it = 0; it < 200; ++it) {
    const auto i = static_cast<std::uint32_t>(rng.next_below(g.n()));
    const auto j = static_cast<std::uint32_t>(rng.next_below(g.n()));
    FieldVector shift{q, {}};
    for (std::uint32_t c = 0; c < t; ++c) shift.coords.push_back(static_cast<std::uint32_t>(rng.next_below(q)));
    FieldVector si{q, {}}, sj{q, {}};
    for (std::uint32_t c = 0; c < t; ++c) {
      si.coords.push_back(field.add(labels[i].coords[c], shift.coords[c]));
      sj.coords.push_back(field.add(labels[j].coords[c], shift.coords[c]));
    }
    REQUIRE(g.edge(i, j) == g.edge(index_of(si), index_of(sj)));
  }
}

TEST_CASE("hyperplane intersection bound in the dot product graph") {
  for (std::uint32_t q : {3u, 5u}) {
    const DenseGraph g = dot_product_graph(q, 3);
    const VertexSet all = VertexSet::full(g.n());
    std::uint32_t worst = 0;
    for (std::uint32_t u = 0; u < g.n(); ++u)
      for (std::uint32_t v = u + 1; v < g.n(); ++v)
        worst = std::max(worst, common_neighbors(g, u, v, all));
    CHECK(worst <= q);  // q^{t-2}, t = 3
  }
}

TEST_CASE("polynomial graph reproduces the builtin families bit for bit") {
  FieldGraphSpec spec;
  spec.family = FieldGraphSpec::Family::polynomial;
  spec.q = 5;
  spec.t = 2;
  spec.polynomial = sqdist_polynomial(2);
  const DenseGraph via_poly = polynomial_graph(spec);
  const DenseGraph direct = distance_graph(5, 2);
  REQUIRE(via_poly.n() == direct.n());
  for (std::uint32_t i = 0; i < direct.n(); ++i)
    for (std::uint32_t j = 0; j < direct.n(); ++j) REQUIRE(via_poly.edge(i, j) == direct.edge(i, j));

  spec.polynomial = dot_polynomial(2);
  spec.exclude_origin = true;
  const DenseGraph via_dot = polynomial_graph(spec);
  const DenseGraph dot_direct = dot_product_graph(5, 2);
  REQUIRE(via_dot.n() == dot_direct.n());
  for (std::uint32_t i = 0; i < dot_direct.n(); ++i)
    for (std::uint32_t j = 0; j < dot_direct.n(); ++j) REQUIRE(via_dot.edge(i, j) == dot_direct.edge(i, j));
}

TEST_CASE("zero polynomial gives the edgeless graph") {
  FieldGraphSpec spec;
  spec.family = FieldGraphSpec::Family::polynomial;
  spec.q = 3;
  spec.t = 2;
  spec.polynomial = Polynomial{2, {PolyTerm{0, {0, 0, 0, 0}}}};
  const DenseGraph g = polynomial_graph(spec);
  CHECK(g.edge_count_nonloop() == 0);
  CHECK_FALSE(g.has_loops());
}

TEST_CASE("asymmetric polynomial is rejected") {
  FieldGraphSpec spec;
  spec.family = FieldGraphSpec::Family::polynomial;
  spec.q = 5;
  spec.t = 2;
  Polynomial p{2, {PolyTerm{1, {1, 0, 0, 0}}}};  // P(x, y) = x_1, not symmetric
  spec.polynomial = p;
  CHECK_THROWS_AS(polynomial_graph(spec), Error);
}

TEST_CASE("polynomial text parser") {
  const Polynomial p = parse_polynomial("x1*y1 + x2*y2", 2);
  REQUIRE(p.terms.size() == 2);
  const PrimeField f(7);
  FieldVector x{7, {2, 3}}, y{7, {4, 5}};
  CHECK(p.eval(f, x, y) == (2 * 4 + 3 * 5) % 7);

  const Polynomial sq = parse_polynomial("x1^2 - 2*x1*y1 + y1^2 + x2^2 - 2*x2*y2 + y2^2", 2);
  CHECK(sq.eval(f, x, y) == sqdist(x, y));

  CHECK_THROWS_AS(parse_polynomial("x3", 2), ConfigError);
  CHECK_THROWS_AS(parse_polynomial("x1 +", 2), ConfigError);
  CHECK_THROWS_AS(parse_polynomial("", 2), ConfigError);
}

TEST_CASE("random graph determinism and endpoints") {
  const DenseGraph a = random_graph(10, 0.5, 42);
  const DenseGraph b = random_graph(10, 0.5, 42);
  for (std::uint32_t i = 0; i < 10; ++i)
    for (std::uint32_t j = 0; j < 10; ++j) REQUIRE(a.edge(i, j) == b.edge(i, j));

  CHECK(random_graph(8, 0.0, 1).edge_count_nonloop() == 0);
  const DenseGraph full = random_graph(8, 1.0, 1);
  CHECK(full.edge_count_nonloop() == 28);
  CHECK_FALSE(full.has_loops());
}

TEST_CASE("random graph edge count lies in the exact binomial 1e-6 tail window") {
  // 66 pairs at p = 0.5: P(X < 14 or X > 52) < 1e-6 per side (exact binomial
  // tail, computed below and pinned).
  const auto tail_window = [] {
    double pmf[67];
    double total = 0;
    for (int i = 0; i <= 66; ++i) {
      double c = 1;
      for (int k = 0; k < i; ++k) c = c * (66 - k) / (k + 1);
      pmf[i] = c * std::pow(0.5, 66);
      total += pmf[i];
    }
    REQUIRE(total == Catch::Approx(1.0).margin(1e-9));
    int w = 0;
    for (; w < 33; ++w) {
      double tail = 0;
      for (int i = 0; i < 33 - w; ++i) tail += pmf[i];
      for (int i = 33 + w + 1; i <= 66; ++i) tail += pmf[i];
      if (tail < 2e-6) break;
    }
    return std::pair{33 - w, 33 + w};
  }();
  CHECK(tail_window.first == 14);
  CHECK(tail_window.second == 52);
  for (std::uint64_t seed : {1ull, 7ull, 42ull, 2026ull}) {
    const DenseGraph g = random_graph(12, 0.5, seed);
    const auto edges = g.edge_count_nonloop();
    CHECK(edges >= 14);
    CHECK(edges <= 52);
  }
}

TEST_CASE("size limit is enforced") {
  CHECK_THROWS_AS(distance_graph(23, 3), Error);  // 12167 > 5000
}
