#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "subradiance/chain.hpp"

namespace subradiance {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// One collective mode profile c_xi(j), unit-normalized.
struct ModeVector {
  ComplexVector amplitudes;
  int branch = 0;
};

/// Bragg-edge Dirichlet ansatz
///   c_xi(j) = sqrt(2/(N+1)) sin(pi xi j/(N+1)) e^{i k_b z_j},  k_b = +pi/d,
/// so the phase factor is (-1)^{j-1} on the lattice z_j = (j-1) d.
inline ModeVector dirichlet_mode(const ChainParams& params, int xi) {
  const int n = params.n_atoms;
  if (xi < 1 || xi > n)
    throw std::invalid_argument("dirichlet_mode: xi must be in [1, N]");
  ModeVector mode;
  mode.branch = xi;
  mode.amplitudes.resize(n);
  const double norm = std::sqrt(2.0 / (n + 1));
  const double a = std::numbers::pi * xi / (n + 1);
  double sign = 1.0;
  for (int j = 1; j <= n; ++j) {
    mode.amplitudes[j - 1] = sign * norm * std::sin(a * j);
    sign = -sign;
  }
  return mode;
}

/// Structure factor S_xi(kappa) = sum_j c_xi(j) e^{i kappa z_j} by direct
/// summation. kappa is passed in units of k0, so the per-site phase is
/// kappa_over_k0 * beta.
inline std::complex<double> structure_factor(const ModeVector& mode,
                                             double kappa_over_k0,
                                             const ChainParams& params) {
  const double phase_step = kappa_over_k0 * params.beta();
  std::complex<double> sum = 0.0;
  for (Eigen::Index j = 0; j < mode.amplitudes.size(); ++j)
    sum += mode.amplitudes[j] *
           std::complex<double>(std::cos(phase_step * j), std::sin(phase_step * j));
  return sum;
}

/// Closed-form autocorrelation of the Dirichlet mode,
///   C_xi(D) = (-1)^D/(N+1) [ (N+1-D) cos(aD) + cot(a) sin(aD) ],
/// with a = pi*xi/(N+1). Equals sum_n c*(n+D) c(n) for 0 <= D <= N-1.
inline double autocorrelation(const ChainParams& params, int xi, int delta) {
  const int n = params.n_atoms;
  if (xi < 1 || xi > n)
    throw std::invalid_argument("autocorrelation: xi must be in [1, N]");
  if (delta < 0 || delta > n - 1)
    throw std::out_of_range("autocorrelation: lag must be in [0, N-1]");
  const double a = params.bragg_a(xi);
  const double sign = (delta % 2 == 0) ? 1.0 : -1.0;
  const double cot_a = std::cos(a) / std::sin(a);
  return sign / (n + 1) *
         ((n + 1 - delta) * std::cos(a * delta) + cot_a * std::sin(a * delta));
}

}  // namespace subradiance
