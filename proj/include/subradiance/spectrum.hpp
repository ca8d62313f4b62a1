#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "subradiance/chain.hpp"
#include "subradiance/hamiltonian.hpp"
#include "subradiance/modes.hpp"

namespace subradiance {

/// Eigendecomposition failure carrying partial diagnostics.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One eigenpair of the effective Hamiltonian with derived observables.
struct CollectiveMode {
  std::complex<double> eigenvalue;   // lambda = J - i Gamma/2, units of Gamma
  ComplexVector eigenvector;         // unit norm, phase-canonicalized
  double linewidth = 0.0;            // Gamma_xi = -2 Im(lambda), clamped at 0
  double shift = 0.0;                // J_xi = Re(lambda)
  std::optional<int> branch;         // xi label from classify_branches
  double overlap = 0.0;              // |<ansatz_xi | v>|^2
  bool low_confidence = false;       // overlap below accept threshold
  double residual = 0.0;             // ||H v - lambda v||_2
};

struct SolverStats {
  double matrix_norm_f = 0.0;
  double max_residual = 0.0;
  double eig_tol = 0.0;
  int clamped_negative_linewidths = 0;
};

/// Full spectrum, modes sorted ascending by linewidth (ties by shift).
struct SpectrumResult {
  std::vector<CollectiveMode> modes;
  ChainParams params;
  SolverStats solver_stats;
};

inline constexpr double default_eig_tol = 1e-10;
inline constexpr double overlap_accept_threshold = 0.5;
inline constexpr double linewidth_clamp_floor = -1e-8;

namespace detail {

/// Rotate so the largest-magnitude component is real and positive, for
/// reproducible downstream output. Ties resolve to the lowest index.
inline void canonicalize_phase(ComplexVector& v) {
  Eigen::Index k = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      k = i;
    }
  }
  if (best > 0.0) v *= std::conj(v[k]) / best;
}

}  // namespace detail

/// Full eigendecomposition of the dense complex non-normal matrix. Every
/// returned pair satisfies ||H v - lambda v|| <= eig_tol * ||H||_F.
inline SpectrumResult eigendecompose(const EffectiveHamiltonian& h,
                                     double eig_tol = default_eig_tol) {
  if (!(eig_tol > 0.0) || eig_tol > 1e-6)
    throw std::invalid_argument("eigendecompose: eig_tol must be in (0, 1e-6]");
  if (!h.matrix.allFinite())
    throw std::invalid_argument("eigendecompose: matrix has NaN/Inf entries");
  const Eigen::Index n = h.matrix.rows();

  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  solver.setMaxIterations(100 * static_cast<int>(n));
  solver.compute(h.matrix, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw SolverError("eigendecompose: QR iteration did not converge for N=" +
                      std::to_string(n));

  SpectrumResult result;
  result.params = h.params;
  result.solver_stats.eig_tol = eig_tol;
  result.solver_stats.matrix_norm_f = h.matrix.norm();
  const double residual_bound = eig_tol * result.solver_stats.matrix_norm_f;

  result.modes.reserve(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    CollectiveMode mode;
    mode.eigenvalue = solver.eigenvalues()[k];
    mode.eigenvector = solver.eigenvectors().col(k);
    mode.eigenvector.normalize();
    detail::canonicalize_phase(mode.eigenvector);
    mode.residual =
        (h.matrix * mode.eigenvector - mode.eigenvalue * mode.eigenvector).norm();
    if (mode.residual > residual_bound)
      throw SolverError("eigendecompose: residual " + std::to_string(mode.residual) +
                        " exceeds bound " + std::to_string(residual_bound) +
                        " for N=" + std::to_string(n));
    result.solver_stats.max_residual =
        std::max(result.solver_stats.max_residual, mode.residual);

    mode.shift = mode.eigenvalue.real();
    mode.linewidth = -2.0 * mode.eigenvalue.imag();
    if (mode.linewidth < 0.0) {
      if (mode.linewidth < linewidth_clamp_floor)
        throw SolverError("eigendecompose: linewidth " + std::to_string(mode.linewidth) +
                          " below clamp floor (solver bug?)");
      mode.linewidth = 0.0;
      ++result.solver_stats.clamped_negative_linewidths;
    }
    result.modes.push_back(std::move(mode));
  }

  std::stable_sort(result.modes.begin(), result.modes.end(),
                   [](const CollectiveMode& a, const CollectiveMode& b) {
                     if (a.linewidth != b.linewidth) return a.linewidth < b.linewidth;
                     return a.shift < b.shift;
                   });
  return result;
}

/// Assign branch labels xi = 1..xi_max greedily by ansatz overlap, each
/// eigenvector used at most once. Low-overlap assignments are kept but
/// flagged: near degeneracies at large spacing the ansatz degrades.
inline void classify_branches(SpectrumResult& spec, int xi_max) {
  const int n = spec.params.n_atoms;
  if (xi_max < 1 || xi_max > n)
    throw std::invalid_argument("classify_branches: xi_max must be in [1, N]");
  for (auto& m : spec.modes) {
    m.branch.reset();
    m.overlap = 0.0;
    m.low_confidence = false;
  }
  std::vector<bool> used(spec.modes.size(), false);
  for (int xi = 1; xi <= xi_max; ++xi) {
    const ModeVector ansatz = dirichlet_mode(spec.params, xi);
    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
      if (used[k]) continue;
      // Eigen's dot conjugates its first argument: <ansatz | v>.
      const std::complex<double> inner =
          ansatz.amplitudes.dot(spec.modes[k].eigenvector);
      const double ov = std::norm(inner);
      if (ov > best) {
        best = ov;
        best_k = k;
      }
    }
    used[best_k] = true;
    auto& m = spec.modes[best_k];
    m.branch = xi;
    m.overlap = best;
    m.low_confidence = best < overlap_accept_threshold;
  }
}

struct BranchObservables {
  double linewidth = 0.0;  // Gamma_xi / Gamma
  double shift = 0.0;      // J_xi / Gamma
  double overlap = 0.0;
};

/// Observables of an assigned branch; throws if xi was never assigned.
inline BranchObservables extract_observables(const SpectrumResult& spec, int xi) {
  for (const auto& m : spec.modes)
    if (m.branch && *m.branch == xi) return {m.linewidth, m.shift, m.overlap};
  throw std::out_of_range("extract_observables: branch " + std::to_string(xi) +
                          " not assigned");
}

/// Pointer to the mode carrying branch xi, or nullptr.
inline const CollectiveMode* find_branch(const SpectrumResult& spec, int xi) {
  for (const auto& m : spec.modes)
    if (m.branch && *m.branch == xi) return &m;
  return nullptr;
}

}  // namespace subradiance
