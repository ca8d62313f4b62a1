#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace subradiance {

/// Physical configuration of the atom chain. All rates are expressed in
/// units of the guided single-atom decay rate Gamma (Gamma == 1 internally),
/// and the spacing is given as d/lambda so that beta = k0*d = 2*pi*d/lambda.
struct ChainParams {
  int n_atoms = 1;          // N
  double spacing = 0.02;    // d / lambda
  double gamma_fs = 0.0;    // gamma / Gamma, free-space decay per atom
  int branch_max = 1;       // highest subradiant branch index tracked

  ChainParams() = default;
  ChainParams(int n, double d_over_lambda, double gamma, int xi_max)
      : n_atoms(n), spacing(d_over_lambda), gamma_fs(gamma), branch_max(xi_max) {
    validate();
  }

  void validate() const {
    if (n_atoms < 1)
      throw std::invalid_argument("ChainParams: n_atoms must be >= 1, got " +
                                  std::to_string(n_atoms));
    if (!(spacing > 0.0))
      throw std::invalid_argument("ChainParams: spacing must be > 0, got " +
                                  std::to_string(spacing));
    if (!(gamma_fs >= 0.0))
      throw std::invalid_argument("ChainParams: gamma_fs must be >= 0, got " +
                                  std::to_string(gamma_fs));
    if (branch_max < 1 || branch_max > n_atoms)
      throw std::invalid_argument("ChainParams: branch_max must be in [1, n_atoms], got " +
                                  std::to_string(branch_max));
  }

  /// beta = k0 d
  double beta() const { return 2.0 * std::numbers::pi * spacing; }

  /// Bragg-edge quantization variable a = pi*xi/(N+1).
  double bragg_a(int xi) const {
    return std::numbers::pi * xi / (n_atoms + 1);
  }
};

}  // namespace subradiance
