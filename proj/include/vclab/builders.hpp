#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vclab/common.hpp"
#include "vclab/ffield.hpp"
#include "vclab/graph.hpp"
#include "vclab/prng.hpp"

namespace vclab {

inline constexpr std::uint64_t kMaxBuiltVertices = 5000;

/// One monomial c * prod x_i^{e_i} * prod y_i^{f_i}; exponents has length 2t
/// (x exponents first, then y exponents).
struct PolyTerm {
  std::int64_t coeff = 0;
  std::vector<std::uint32_t> exponents;
};

/// A symmetric polynomial P(x, y) given as a sum of monomials, evaluated
/// mod q. Covers both built-in families without an expression interpreter.
struct Polynomial {
  std::uint32_t t = 0;
  std::vector<PolyTerm> terms;

  std::uint32_t eval(const PrimeField& field, const FieldVector& x, const FieldVector& y) const {
    if (x.dim() != t || y.dim() != t) throw Error("Polynomial: dimension mismatch");
    std::uint32_t acc = 0;
    for (const PolyTerm& term : terms) {
      std::uint32_t value = field.reduce(term.coeff);
      for (std::uint32_t i = 0; i < t; ++i) {
        if (term.exponents[i]) value = field.mul(value, field.pow(x.coords[i], term.exponents[i]));
        if (term.exponents[t + i]) value = field.mul(value, field.pow(y.coords[i], term.exponents[t + i]));
      }
      acc = field.add(acc, value);
    }
    return acc;
  }
};

/// sum_i (x_i - y_i)^2 expanded to monomials.
inline Polynomial sqdist_polynomial(std::uint32_t t) {
  Polynomial p{t, {}};
  for (std::uint32_t i = 0; i < t; ++i) {
    PolyTerm xx{1, std::vector<std::uint32_t>(2 * t, 0)}, xy{-2, std::vector<std::uint32_t>(2 * t, 0)},
        yy{1, std::vector<std::uint32_t>(2 * t, 0)};
    xx.exponents[i] = 2;
    xy.exponents[i] = 1;
    xy.exponents[t + i] = 1;
    yy.exponents[t + i] = 2;
    p.terms.push_back(xx);
    p.terms.push_back(xy);
    p.terms.push_back(yy);
  }
  return p;
}

inline Polynomial dot_polynomial(std::uint32_t t) {
  Polynomial p{t, {}};
  for (std::uint32_t i = 0; i < t; ++i) {
    PolyTerm term{1, std::vector<std::uint32_t>(2 * t, 0)};
    term.exponents[i] = 1;
    term.exponents[t + i] = 1;
    p.terms.push_back(term);
  }
  return p;
}

/// Parses "c*x1^2*y3 + x2*y2 - 4" style monomial sums. Variables are x1..xt
/// and y1..yt; '*' between factors is optional whitespace-wise but each
/// factor is var[^exp] or an integer.
inline Polynomial parse_polynomial(const std::string& text, std::uint32_t t) {
  Polynomial poly{t, {}};
  std::size_t pos = 0;
  const auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  skip_ws();
  bool first = true;
  while (pos < text.size()) {
    std::int64_t sign = 1;
    skip_ws();
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw ConfigError("polynomial: expected '+' or '-' near position " + std::to_string(pos));
    }
    first = false;
    PolyTerm term{sign, std::vector<std::uint32_t>(2 * t, 0)};
    bool saw_factor = false;
    while (true) {
      skip_ws();
      if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
      if (text[pos] == '*') {
        ++pos;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::int64_t value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          value = value * 10 + (text[pos++] - '0');
        term.coeff *= value;
        saw_factor = true;
        continue;
      }
      if (text[pos] == 'x' || text[pos] == 'y') {
        const bool is_y = text[pos] == 'y';
        ++pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
          throw ConfigError("polynomial: variable needs an index (x1..x" + std::to_string(t) + ")");
        std::uint32_t idx = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          idx = idx * 10 + (text[pos++] - '0');
        if (idx < 1 || idx > t) throw ConfigError("polynomial: variable index out of range");
        std::uint32_t exp = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ConfigError("polynomial: missing exponent after '^'");
          exp = 0;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            exp = exp * 10 + (text[pos++] - '0');
        }
        term.exponents[(is_y ? t : 0) + idx - 1] += exp;
        saw_factor = true;
        continue;
      }
      throw ConfigError(std::string("polynomial: unexpected character '") + text[pos] + "'");
    }
    if (!saw_factor) throw ConfigError("polynomial: empty term");
    poly.terms.push_back(std::move(term));
  }
  if (poly.terms.empty()) throw ConfigError("polynomial: no terms");
  return poly;
}

struct FieldGraphSpec {
  enum class Family { distance, dotproduct, polynomial };
  Family family = Family::distance;
  std::uint32_t q = 3;
  std::uint32_t t = 2;
  std::optional<Polynomial> polynomial;
  bool exclude_origin = false;  // only meaningful for family == polynomial

  void validate() const {
    if (!is_prime(q)) throw Error("FieldGraphSpec: q must be prime");
    if (t < 2) throw Error("FieldGraphSpec: t must be at least 2");
    if (family == Family::polynomial && !polynomial) throw Error("FieldGraphSpec: polynomial family needs a polynomial");
  }
};

inline std::string family_name(FieldGraphSpec::Family f) {
  switch (f) {
    case FieldGraphSpec::Family::distance: return "distance";
    case FieldGraphSpec::Family::dotproduct: return "dotproduct";
    case FieldGraphSpec::Family::polynomial: return "polynomial";
  }
  return "custom";
}

/// All q^t vectors in lexicographic coordinate order (first coordinate most
/// significant). Vertex indices are reproducible across runs and languages.
inline std::vector<FieldVector> enumerate_vectors(std::uint32_t q, std::uint32_t t) {
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < t; ++i) {
    n *= q;
    if (n > kMaxBuiltVertices + 1) throw Error("enumerate_vectors: q^t exceeds the size limit");
  }
  std::vector<FieldVector> out;
  out.reserve(n);
  std::vector<std::uint32_t> coords(t, 0);
  for (std::uint64_t code = 0; code < n; ++code) {
    out.push_back(FieldVector{q, coords});
    for (std::uint32_t i = t; i-- > 0;) {
      if (++coords[i] < q) break;
      coords[i] = 0;
    }
  }
  return out;
}

namespace detail {

template <typename Pred>
DenseGraph build_labeled(std::vector<FieldVector> labels, GraphMeta meta, Pred&& pred) {
  const auto n = static_cast<std::uint32_t>(labels.size());
  DenseGraph g(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j)
      if (pred(labels[i], labels[j])) g.set_edge(i, j);
  g.set_labels(std::move(labels));
  g.set_meta(std::move(meta));
  return g;
}

}  // namespace detail

/// Distance graph on F_q^t: edge iff the quadratic form of the difference is
/// 1. Loopless by construction (the zero displacement has norm 0).
inline DenseGraph distance_graph(std::uint32_t q, std::uint32_t t) {
  FieldGraphSpec spec{FieldGraphSpec::Family::distance, q, t, std::nullopt, false};
  spec.validate();
  return detail::build_labeled(enumerate_vectors(q, t), GraphMeta{"distance", q, t},
                               [](const FieldVector& a, const FieldVector& b) { return sqdist(a, b) == 1; });
}

/// Dot-product graph on F_q^t \ {0}: edge iff x.y = 1; a vertex carries a
/// loop exactly when x.x = 1. Every row sum (loop counted once) is q^{t-1}.
inline DenseGraph dot_product_graph(std::uint32_t q, std::uint32_t t) {
  FieldGraphSpec spec{FieldGraphSpec::Family::dotproduct, q, t, std::nullopt, true};
  spec.validate();
  auto labels = enumerate_vectors(q, t);
  labels.erase(labels.begin());  // origin is first in lexicographic order
  return detail::build_labeled(std::move(labels), GraphMeta{"dotproduct", q, t},
                               [](const FieldVector& a, const FieldVector& b) { return dot(a, b) == 1; });
}

/// Graph of an arbitrary symmetric polynomial relation P(x, y) = 1. Symmetry
/// is spot-verified on a deterministic sample; asymmetry is an error.
inline DenseGraph polynomial_graph(const FieldGraphSpec& spec) {
  spec.validate();
  if (spec.family != FieldGraphSpec::Family::polynomial)
    throw Error("polynomial_graph: spec must have family=polynomial");
  const PrimeField field(spec.q);
  const Polynomial& poly = *spec.polynomial;
  auto labels = enumerate_vectors(spec.q, spec.t);
  if (spec.exclude_origin) labels.erase(labels.begin());

  const auto n = static_cast<std::uint32_t>(labels.size());
  Rng rng(0x9001u ^ (std::uint64_t(spec.q) << 16) ^ spec.t);
  const std::uint32_t samples = std::min<std::uint32_t>(256, n * n);
  for (std::uint32_t s = 0; s < samples; ++s) {
    const auto i = static_cast<std::uint32_t>(rng.next_below(n));
    const auto j = static_cast<std::uint32_t>(rng.next_below(n));
    if (poly.eval(field, labels[i], labels[j]) != poly.eval(field, labels[j], labels[i]))
      throw Error("polynomial_graph: polynomial is not symmetric (sampled pair " + std::to_string(i) + "," +
                  std::to_string(j) + ")");
  }
  return detail::build_labeled(std::move(labels), GraphMeta{"polynomial", spec.q, spec.t},
                               [&](const FieldVector& a, const FieldVector& b) { return poly.eval(field, a, b) == 1; });
}

/// Loopless Erdos-Renyi graph; bit-identical for a fixed seed.
inline DenseGraph random_graph(std::uint32_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw Error("random_graph: p out of [0,1]");
  DenseGraph g(n);
  Rng rng(seed);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (rng.next_double() < p) g.set_edge(i, j);
  g.set_meta(GraphMeta{"random", 0, 0});
  return g;
}

inline DenseGraph build_field_graph(const FieldGraphSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case FieldGraphSpec::Family::distance: return distance_graph(spec.q, spec.t);
    case FieldGraphSpec::Family::dotproduct: return dot_product_graph(spec.q, spec.t);
    case FieldGraphSpec::Family::polynomial: return polynomial_graph(spec);
  }
  throw Error("build_field_graph: unknown family");
}

}  // namespace vclab
