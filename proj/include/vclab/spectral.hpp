#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "vclab/common.hpp"
#include "vclab/graph.hpp"

namespace vclab {

// Full dense eigendecomposition is deliberate: at desk scale (n <= ~2500 is
// comfortable, 5000 is the hard cap) it is fast enough and gives the whole
// spectrum for the trace invariants.
inline constexpr std::uint32_t kMaxSpectralN = 5000;

struct SpectralProfile {
  std::vector<double> eigenvalues;   // descending
  std::optional<std::uint32_t> d;    // exact integer row sums, loops counted once
  double lambda = 0.0;               // max |eigenvalues[i]|, i >= 2 (1-based)
};

/// Eigenvalues of the literal adjacency matrix (loops on the diagonal).
inline SpectralProfile spectral_profile(const DenseGraph& g, double tol = 1e-9) {
  if (tol <= 0) throw Error("spectral_profile: tol must be positive");
  const std::uint32_t n = g.n();
  if (n > kMaxSpectralN) throw Error("spectral_profile: graph too large for dense solver");

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto r = g.row(i);
    for (std::uint32_t w = 0; w < g.words(); ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        const std::uint32_t j = (w << 6) + std::countr_zero(bits);
        a(i, j) = 1.0;
        bits &= bits - 1;
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("spectral_profile: eigensolver did not converge (n=" + std::to_string(n) + ")");

  SpectralProfile profile;
  profile.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(profile.eigenvalues.begin(), profile.eigenvalues.end(), std::greater<>());
  profile.d = g.regular_degree();
  if (profile.d && std::abs(profile.eigenvalues.front() - double(*profile.d)) > tol * std::max(1.0, double(*profile.d)))
    throw Error("spectral_profile: top eigenvalue disagrees with regular degree beyond tolerance");
  for (std::size_t i = 1; i < profile.eigenvalues.size(); ++i)
    profile.lambda = std::max(profile.lambda, std::abs(profile.eigenvalues[i]));
  return profile;
}

}  // namespace vclab
