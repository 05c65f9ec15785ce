#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace vclab {

// Exact counts routinely exceed 64 bits (|U|^7-scale tuple totals), so every
// counter returns an arbitrary-precision integer.
using BigInt = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an enumeration exceeds its work budget. A partial count is
/// never returned.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t checks_used)
      : Error(what), checks_used(checks_used) {}
  std::uint64_t checks_used;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Fixed-format float rendering (12 significant digits, C locale) used by
/// every writer so that identical inputs give byte-identical output.
inline std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace vclab
