#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vclab/common.hpp"

namespace vclab {

using IndexPair = std::pair<std::uint8_t, std::uint8_t>;

/// A small configuration to count homomorphisms of: required edges must map
/// onto edges, forbidden pairs onto non-edges, and `distinct` pairs onto
/// distinct graph vertices. Degenerate images are counted unless a distinct
/// pair says otherwise. A required/forbidden pair (i, i) constrains the loop
/// at the image vertex.
struct Pattern {
  std::uint8_t k = 0;
  std::vector<IndexPair> required;
  std::vector<IndexPair> forbidden;
  std::vector<IndexPair> distinct;

  Pattern() = default;
  Pattern(std::uint8_t k, std::vector<IndexPair> req, std::vector<IndexPair> forb = {},
          std::vector<IndexPair> dist = {})
      : k(k), required(std::move(req)), forbidden(std::move(forb)), distinct(std::move(dist)) {
    normalize();
  }

  void normalize() {
    if (k == 0) throw Error("Pattern: needs at least one vertex");
    const auto fix = [&](std::vector<IndexPair>& pairs, bool allow_equal) {
      for (auto& [a, b] : pairs) {
        if (a > b) std::swap(a, b);
        if (b >= k) throw Error("Pattern: pair index out of range");
        if (!allow_equal && a == b) throw Error("Pattern: distinctness pair must name two vertices");
      }
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    };
    fix(required, true);
    fix(forbidden, true);
    fix(distinct, false);
    for (const auto& pair : required)
      if (std::binary_search(forbidden.begin(), forbidden.end(), pair))
        throw Error("Pattern: pair both required and forbidden");
  }
};

/// Path with `edges` edges on edges+1 vertices; edges = 0 is a single vertex.
inline Pattern path_pattern(std::uint32_t edges) {
  std::vector<IndexPair> req;
  for (std::uint32_t i = 0; i < edges; ++i) req.push_back({std::uint8_t(i), std::uint8_t(i + 1)});
  return Pattern(static_cast<std::uint8_t>(edges + 1), std::move(req));
}

/// Cycle of length m; m = 1 is a single required loop.
inline Pattern cycle_pattern(std::uint32_t m) {
  if (m == 0) throw Error("cycle_pattern: length must be >= 1");
  std::vector<IndexPair> req;
  for (std::uint32_t i = 0; i < m; ++i) req.push_back({std::uint8_t(i), std::uint8_t((i + 1) % m)});
  return Pattern(static_cast<std::uint8_t>(m), std::move(req));
}

/// Star with `leaves` edges from vertex 0.
inline Pattern star_pattern(std::uint32_t leaves) {
  std::vector<IndexPair> req;
  for (std::uint32_t i = 1; i <= leaves; ++i) req.push_back({0, std::uint8_t(i)});
  return Pattern(static_cast<std::uint8_t>(leaves + 1), std::move(req));
}

// Role order for the named configurations below follows the tuple order of
// their definitions.

/// (x,y,z,u,v): 4-cycle x,y,z,u with a pendant edge at u.
inline Pattern h1_pattern() { return Pattern(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 0}}); }

/// (x,y,z,u,v): complete bipartite K_{2,3} with parts {u,y} and {x,z,v}.
inline Pattern h2_pattern() { return Pattern(5, {{0, 3}, {3, 2}, {2, 1}, {0, 1}, {3, 4}, {4, 1}}); }

inline Pattern k23_pattern() { return h2_pattern(); }

/// (x,y,z,u,v,u',x'): two 4-cycles sharing the edge y~z, joined through v.
inline Pattern h3_pattern() {
  return Pattern(7, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {3, 4}, {4, 5}, {5, 2}, {5, 6}, {6, 1}});
}

/// H3 with the extra edge x~u'.
inline Pattern h3plus_pattern() {
  Pattern p = h3_pattern();
  p.required.push_back({0, 5});
  p.normalize();
  return p;
}

/// (x,y,z,u,v,x'): H3 with x and u' identified.
inline Pattern h3minus_pattern() {
  return Pattern(6, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 5}, {5, 1}, {0, 4}, {4, 3}, {0, 2}});
}

/// (y,z,u,v,u',x): 6-cycle with the chord z~u'.
inline Pattern h4_pattern() {
  return Pattern(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}});
}

}  // namespace vclab
