#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "vclab/common.hpp"
#include "vclab/graph.hpp"
#include "vclab/prng.hpp"
#include "vclab/spectral.hpp"

namespace vclab {

struct MixingViolation {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string f_type;
  std::string g_type;
  double lhs = 0, rhs = 0;
};

struct MixingReport {
  std::uint64_t trials = 0;
  double max_ratio = 0.0;
  double tol = 0.0;
  std::vector<MixingViolation> violations;
  std::vector<double> ratios;  // per trial, in trial order
  bool passed() const { return violations.empty(); }
};

namespace detail {

inline const char* vec_type_name(int type) { return type == 0 ? "pm1" : "indicator"; }

inline void fill_test_vector(Rng& rng, int type, std::vector<std::int32_t>& v) {
  for (auto& e : v) e = (type == 0) ? (rng.next_bool() ? 1 : -1) : (rng.next_bool() ? 1 : 0);
}

}  // namespace detail

/// Checks |<f,Ag> - dn E(f)E(g)| <= lambda ||f||_2 ||g||_2 on random +-1 and
/// 0/1 vectors, with additive slack tol*n*max|f|*max|g|. The left side is
/// evaluated in exact integer arithmetic.
inline MixingReport mixing_check(const DenseGraph& g, const SpectralProfile& profile,
                                 std::uint64_t trials, std::uint64_t seed, double tol = 1e-9) {
  if (!profile.d) throw Error("mixing_check: graph is not regular");
  const std::uint32_t n = g.n();
  const std::int64_t d = *profile.d;
  MixingReport report;
  report.trials = trials;
  report.tol = tol;
  report.ratios.reserve(trials);

  std::vector<std::int32_t> fv(n), gv(n);
  std::vector<std::int64_t> ag(n);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, trial);
    Rng rng(trial_seed);
    const int f_type = static_cast<int>(rng.next_below(2));
    const int g_type = static_cast<int>(rng.next_below(2));
    detail::fill_test_vector(rng, f_type, fv);
    detail::fill_test_vector(rng, g_type, gv);

    for (std::uint32_t i = 0; i < n; ++i) {
      std::int64_t acc = 0;
      const auto r = g.row(i);
      for (std::uint32_t w = 0; w < g.words(); ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
          acc += gv[(w << 6) + std::countr_zero(bits)];
          bits &= bits - 1;
        }
      }
      ag[i] = acc;
    }
    std::int64_t f_dot_ag = 0, sum_f = 0, sum_g = 0, f2 = 0, g2 = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      f_dot_ag += std::int64_t(fv[i]) * ag[i];
      sum_f += fv[i];
      sum_g += gv[i];
      f2 += std::int64_t(fv[i]) * fv[i];
      g2 += std::int64_t(gv[i]) * gv[i];
    }
    // n * LHS = |n <f,Ag> - d (sum f)(sum g)|, exact
    const std::int64_t scaled = std::int64_t(n) * f_dot_ag - d * sum_f * sum_g;
    const double lhs = std::abs(double(scaled)) / n;
    const double slack = tol * double(n);  // both vector types have max|.| <= 1
    const double rhs = profile.lambda * std::sqrt(double(f2)) * std::sqrt(double(g2)) + slack;
    const double ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? HUGE_VAL : 0.0);
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (lhs > rhs)
      report.violations.push_back({trial, trial_seed, detail::vec_type_name(f_type),
                                   detail::vec_type_name(g_type), lhs, rhs});
  }
  return report;
}

inline constexpr std::uint32_t kTensorMixingMaxN = 200;

/// Tensor-power mixing: for non-negative f, g on V x V,
///   |sum_{x~z, y~w} f(x,y) g(z,w) - (d^2/n^2) ||f||_1 ||g||_1|
///     <= lambda^2 ||f||_2 ||g||_2 + (d lambda / n)(||F||_2||G||_2 + ||F'||_2||G'||_2),
/// where F/F' are row/column marginal sums. Random low-rank non-negative
/// test functions; slack tol*n^2*max f*max g.
inline MixingReport tensor_mixing_check(const DenseGraph& g, const SpectralProfile& profile,
                                        std::uint64_t trials, std::uint64_t seed, double tol = 1e-9) {
  if (!profile.d) throw Error("tensor_mixing_check: graph is not regular");
  const std::uint32_t n = g.n();
  if (n > kTensorMixingMaxN) throw Error("tensor_mixing_check: n exceeds the dense n^2 limit");
  const double d = double(*profile.d);
  const double lambda = profile.lambda;
  MixingReport report;
  report.trials = trials;
  report.tol = tol;
  report.ratios.reserve(trials);

  std::vector<double> adj(std::size_t(n) * n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (g.edge(i, j)) adj[std::size_t(i) * n + j] = 1.0;

  const auto matmul = [&](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(std::size_t(n) * n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t k = 0; k < n; ++k) {
        const double aik = a[std::size_t(i) * n + k];
        if (aik == 0.0) continue;
        for (std::uint32_t j = 0; j < n; ++j) c[std::size_t(i) * n + j] += aik * b[std::size_t(k) * n + j];
      }
    return c;
  };

  std::vector<double> fm(std::size_t(n) * n), gm(std::size_t(n) * n);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, trial);
    Rng rng(trial_seed);
    const auto fill_low_rank = [&](std::vector<double>& m) {
      const std::uint32_t rank = 1 + static_cast<std::uint32_t>(rng.next_below(3));
      std::fill(m.begin(), m.end(), 0.0);
      std::vector<double> a(n), b(n);
      for (std::uint32_t l = 0; l < rank; ++l) {
        for (auto& e : a) e = rng.next_double();
        for (auto& e : b) e = rng.next_double();
        for (std::uint32_t x = 0; x < n; ++x)
          for (std::uint32_t y = 0; y < n; ++y) m[std::size_t(x) * n + y] += a[x] * b[y];
      }
    };
    fill_low_rank(fm);
    fill_low_rank(gm);

    const std::vector<double> aga = matmul(matmul(adj, gm), adj);
    double lhs_sum = 0, f1 = 0, g1 = 0, f2 = 0, g2 = 0, maxf = 0, maxg = 0;
    std::vector<double> frow(n, 0), fcol(n, 0), grow(n, 0), gcol(n, 0);
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y) {
        const double fxy = fm[std::size_t(x) * n + y];
        const double gxy = gm[std::size_t(x) * n + y];
        lhs_sum += fxy * aga[std::size_t(x) * n + y];
        f1 += fxy;
        g1 += gxy;
        f2 += fxy * fxy;
        g2 += gxy * gxy;
        frow[x] += fxy;
        fcol[y] += fxy;
        grow[x] += gxy;
        gcol[y] += gxy;
        maxf = std::max(maxf, fxy);
        maxg = std::max(maxg, gxy);
      }
    const auto norm2 = [](const std::vector<double>& v) {
      double s = 0;
      for (double e : v) s += e * e;
      return std::sqrt(s);
    };
    const double lhs = std::abs(lhs_sum - (d * d) / (double(n) * n) * f1 * g1);
    const double rhs = lambda * lambda * std::sqrt(f2) * std::sqrt(g2) +
                       (d * lambda / n) * (norm2(frow) * norm2(grow) + norm2(fcol) * norm2(gcol)) +
                       tol * double(n) * n * maxf * maxg;
    const double ratio = rhs > 0 ? lhs / rhs : (lhs > 0 ? HUGE_VAL : 0.0);
    report.ratios.push_back(ratio);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (lhs > rhs) report.violations.push_back({trial, trial_seed, "lowrank", "lowrank", lhs, rhs});
  }
  return report;
}

}  // namespace vclab
