#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vclab/common.hpp"

namespace vclab {

/// Subset-size thresholds from the lower-bound theorems. The hidden absolute
/// constants are not knowable from the statements, so C is configurable and
/// threshold comparisons are reported, never asserted.
struct ThresholdSpec {
  enum class Kind {
    generic_vc2,   // C * lambda n / d
    generic_vc3,   // C * max(lambda^{2/3} (n/d)^2, lambda (n/d)^{13/7})
    field_vc2,     // C * q^{(t+1)/2}
    field_vc3,     // C * max(q^{(7t+19)/14}, q^{t-1})
    dot3_vc2,      // C * q^2
    dot3_vc3,      // C * q^{5/2}
  };
  std::string name;
  Kind kind;
  double C = 1.0;
};

struct ThresholdInputs {
  double n = 0, d = 0, lambda = 0;
  double q = 0, t = 0;
};

inline double threshold_eval(const ThresholdSpec& spec, const ThresholdInputs& in) {
  if (spec.C <= 0) throw Error("threshold_eval: C must be positive");
  switch (spec.kind) {
    case ThresholdSpec::Kind::generic_vc2:
      if (in.n <= 0 || in.d <= 0) throw Error("threshold_eval: needs n, d > 0");
      return spec.C * in.lambda * in.n / in.d;
    case ThresholdSpec::Kind::generic_vc3: {
      if (in.n <= 0 || in.d <= 0) throw Error("threshold_eval: needs n, d > 0");
      const double nd = in.n / in.d;
      return spec.C * std::max(std::pow(in.lambda, 2.0 / 3.0) * nd * nd,
                               in.lambda * std::pow(nd, 13.0 / 7.0));
    }
    case ThresholdSpec::Kind::field_vc2:
      if (in.q <= 0 || in.t <= 0) throw Error("threshold_eval: needs q, t > 0");
      return spec.C * std::pow(in.q, (in.t + 1.0) / 2.0);
    case ThresholdSpec::Kind::field_vc3:
      if (in.q <= 0 || in.t <= 0) throw Error("threshold_eval: needs q, t > 0");
      return spec.C * std::max(std::pow(in.q, (7.0 * in.t + 19.0) / 14.0), std::pow(in.q, in.t - 1.0));
    case ThresholdSpec::Kind::dot3_vc2:
      if (in.q <= 0) throw Error("threshold_eval: needs q > 0");
      return spec.C * in.q * in.q;
    case ThresholdSpec::Kind::dot3_vc3:
      if (in.q <= 0) throw Error("threshold_eval: needs q > 0");
      return spec.C * std::pow(in.q, 2.5);
  }
  throw Error("threshold_eval: unknown kind");
}

/// Thresholds that apply to a given graph family (field graphs get both the
/// generic and the field-specific curves; the q^2 / q^{5/2} pair is specific
/// to the 3-dimensional dot-product graph).
inline std::vector<ThresholdSpec> applicable_thresholds(const std::string& family, std::uint32_t t,
                                                        double C = 1.0) {
  std::vector<ThresholdSpec> specs = {{"vc2_generic", ThresholdSpec::Kind::generic_vc2, C},
                                      {"vc3_generic", ThresholdSpec::Kind::generic_vc3, C}};
  if (family == "distance" || family == "dotproduct") {
    specs.push_back({"vc2_field", ThresholdSpec::Kind::field_vc2, C});
    specs.push_back({"vc3_field", ThresholdSpec::Kind::field_vc3, C});
  }
  if (family == "dotproduct" && t == 3) {
    specs.push_back({"vc2_dot3", ThresholdSpec::Kind::dot3_vc2, C});
    specs.push_back({"vc3_dot3", ThresholdSpec::Kind::dot3_vc3, C});
  }
  return specs;
}

}  // namespace vclab
