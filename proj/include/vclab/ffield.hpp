#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vclab/common.hpp"

namespace vclab {

inline bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

/// Arithmetic in the prime field F_q. Residues are machine integers in
/// [0, q); every operation reduces eagerly. Prime-power fields are out of
/// scope (all supported constructions use prime q).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw Error("PrimeField: modulus " + std::to_string(q) + " is not prime");
  }

  std::uint32_t q() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    check(a);
    check(b);
    const std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<std::uint32_t>(s >= q_ ? s - q_ : s);
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    check(a);
    check(b);
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % q_);
  }

  std::uint32_t neg(std::uint32_t a) const {
    check(a);
    return a == 0 ? 0 : q_ - a;
  }

  std::uint32_t inv(std::uint32_t a) const {
    check(a);
    if (a == 0) throw Error("PrimeField: inverse of 0");
    return pow(a, q_ - 2);  // Fermat
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    check(a);
    std::uint64_t base = a, acc = 1 % q_;
    while (e) {
      if (e & 1) acc = (acc * base) % q_;
      base = (base * base) % q_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(acc);
  }

  /// Reduce an arbitrary signed integer into [0, q).
  std::uint32_t reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(q_);
    if (r < 0) r += q_;
    return static_cast<std::uint32_t>(r);
  }

 private:
  void check(std::uint32_t a) const {
    if (a >= q_) throw Error("PrimeField: residue " + std::to_string(a) + " out of range mod " + std::to_string(q_));
  }
  std::uint32_t q_;
};

/// A point of F_q^t. Carries its modulus so mixed-field operations fail loudly.
struct FieldVector {
  std::uint32_t q = 0;
  std::vector<std::uint32_t> coords;

  std::size_t dim() const { return coords.size(); }
  bool operator==(const FieldVector& other) const = default;
};

inline void require_compatible(const FieldVector& u, const FieldVector& v) {
  if (u.q != v.q) throw Error("FieldVector: mismatched moduli");
  if (u.coords.size() != v.coords.size()) throw Error("FieldVector: dimension mismatch");
}

/// x_1 y_1 + ... + x_t y_t mod q.
inline std::uint32_t dot(const FieldVector& u, const FieldVector& v) {
  require_compatible(u, v);
  const std::uint64_t q = u.q;
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < u.coords.size(); ++i)
    acc = (acc + std::uint64_t(u.coords[i]) * v.coords[i]) % q;
  return static_cast<std::uint32_t>(acc);
}

/// (x_1 - y_1)^2 + ... + (x_t - y_t)^2 mod q.
inline std::uint32_t sqdist(const FieldVector& u, const FieldVector& v) {
  require_compatible(u, v);
  const std::uint64_t q = u.q;
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < u.coords.size(); ++i) {
    const std::uint64_t diff = (std::uint64_t(u.coords[i]) + q - v.coords[i]) % q;
    acc = (acc + diff * diff) % q;
  }
  return static_cast<std::uint32_t>(acc);
}

inline FieldVector sub(const FieldVector& u, const FieldVector& v) {
  require_compatible(u, v);
  FieldVector out{u.q, {}};
  out.coords.reserve(u.coords.size());
  for (std::size_t i = 0; i < u.coords.size(); ++i)
    out.coords.push_back(static_cast<std::uint32_t>((std::uint64_t(u.coords[i]) + u.q - v.coords[i]) % u.q));
  return out;
}

}  // namespace vclab
