#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "subradiance/chain.hpp"
#include "subradiance/kernels.hpp"
#include "subradiance/modes.hpp"
#include "subradiance/quadrature.hpp"

namespace subradiance {

inline constexpr double zeta3 = 1.2020569031595943;  // Apery's constant

/// Validity thresholds for the asymptotic formulas. Violations are flagged,
/// never hard errors: the experiments layer decides inclusion.
inline constexpr double deep_subwavelength_max_beta = 0.5;

struct RegimeFlags {
  bool deep_subwavelength = true;  // k0 d <= 0.5
  bool branch_small = true;        // xi <= N/10

  bool all_ok() const { return deep_subwavelength && branch_small; }
  std::string tokens() const {
    std::string s;
    if (!deep_subwavelength) s += "shallow_spacing;";
    if (!branch_small) s += "branch_large;";
    return s;
  }
};

inline RegimeFlags regime_flags(const ChainParams& params, int xi) {
  RegimeFlags f;
  f.deep_subwavelength = params.beta() <= deep_subwavelength_max_beta;
  f.branch_small = 10 * xi <= params.n_atoms;
  return f;
}

/// Closed-form prediction for one (N, d, gamma, xi) point, decomposed into
/// guided and free-space parts. Totals are the exact sums of their parts.
struct AnalyticPrediction {
  double linewidth_total = 0.0;
  double linewidth_guided = 0.0;
  double linewidth_fs = 0.0;
  double shift_total = 0.0;
  double shift_guided = 0.0;
  double shift_fs = 0.0;
  double shift_infty = 0.0;
  double finite_size_coeff = 0.0;  // C(d)
  RegimeFlags flags;
};

namespace detail {

inline void require_away_from_half_wavelength(const ChainParams& params,
                                              const char* what) {
  // tan(k0 d / 2) and the band-edge prefactors pole at d = lambda/2.
  if (std::abs(params.spacing - 0.5) < 1e-12)
    throw std::domain_error(std::string(what) + ": pole at d = lambda/2");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ideal waveguide (gamma = 0 limit)

/// Complex Bragg-edge detuning, delta_xi * d = (pi xi / N)[1 + (i/N) tan(k0 d/2)].
inline std::complex<double> ideal_bragg_detuning(const ChainParams& params, int xi) {
  detail::require_away_from_half_wavelength(params, "ideal_bragg_detuning");
  const double re = std::numbers::pi * xi / params.n_atoms;
  return {re, re * std::tan(0.5 * params.beta()) / params.n_atoms};
}

/// Guided-mode dispersion omega(kd) = (Gamma/2) sin(k0 d) / (cos kd - cos k0 d);
/// accepts complex kd so the Bragg-edge detuning can be substituted directly.
inline std::complex<double> bloch_dispersion(std::complex<double> kd,
                                             const ChainParams& params) {
  const double beta = params.beta();
  const std::complex<double> denom = std::cos(kd) - std::cos(beta);
  if (std::abs(denom) < 1e-14)
    throw std::domain_error("bloch_dispersion: superradiant pole cos(kd) = cos(k0 d)");
  return 0.5 * std::sin(beta) / denom;
}

/// Ideal-waveguide subradiant linewidth,
///   Gamma_xi = (Gamma/2) (pi^2 xi^2 / N^3) sin^2(k0 d/2)/cos^4(k0 d/2).
inline double gamma_ideal(const ChainParams& params, int xi) {
  detail::require_away_from_half_wavelength(params, "gamma_ideal");
  const double half = 0.5 * params.beta();
  const double s = std::sin(half), c = std::cos(half);
  const double n = params.n_atoms;
  const double a = std::numbers::pi * xi / n;
  return 0.5 * a * a / n * (s * s) / (c * c * c * c);
}

/// Ideal-waveguide shift: band-edge term plus the xi^2/M^2 finite-size
/// correction, M = N (closed form) or N+1 (open-boundary quantization).
inline double j_ideal(const ChainParams& params, int xi, bool open_boundary = false) {
  detail::require_away_from_half_wavelength(params, "j_ideal");
  const double half = 0.5 * params.beta();
  const double s = std::sin(half), c = std::cos(half);
  const double m = open_boundary ? params.n_atoms + 1 : params.n_atoms;
  const double a = std::numbers::pi * xi / m;
  return -0.5 * std::tan(half) - 0.125 * s / (c * c * c) * a * a;
}

// ---------------------------------------------------------------------------
// Nonideal waveguide, deep-subwavelength asymptotics

/// Guided linewidth of the Bragg-edge branch with the boundary-interference
/// parity factor: (pi^2 xi^2/(N+1)^3)(Gamma/4)[1 + (-1)^{N+xi} cos((N+1) k0 d)].
inline double gamma_guided_subwavelength(const ChainParams& params, int xi) {
  const double np1 = params.n_atoms + 1;
  const double a = params.bragg_a(xi);
  const double parity = ((params.n_atoms + xi) % 2 == 0) ? 1.0 : -1.0;
  return a * a / np1 * 0.25 * (1.0 + parity * std::cos(np1 * params.beta()));
}

/// Oscillatory bracket of the guided linewidth (the parity-interference
/// factor alone), exposed for parity-structure tests.
inline double guided_parity_bracket(const ChainParams& params, int xi) {
  const double parity = ((params.n_atoms + xi) % 2 == 0) ? 1.0 : -1.0;
  return 1.0 + parity * std::cos((params.n_atoms + 1) * params.beta());
}

/// Free-space linewidth, same (N+1)^-3 envelope with the kernel replacing
/// the cosine: (pi^2 xi^2/(N+1)^3)(gamma/4)[1 + (-1)^{N+xi} K_fs((N+1) k0 d)].
inline double gamma_fs_analytic(const ChainParams& params, int xi) {
  const double np1 = params.n_atoms + 1;
  const double a = params.bragg_a(xi);
  const double parity = ((params.n_atoms + xi) % 2 == 0) ? 1.0 : -1.0;
  return a * a / np1 * 0.25 * params.gamma_fs *
         (1.0 + parity * kernel_kfs(np1 * params.beta()));
}

inline double fs_parity_bracket(const ChainParams& params, int xi) {
  const double parity = ((params.n_atoms + xi) % 2 == 0) ? 1.0 : -1.0;
  return 1.0 + parity * kernel_kfs((params.n_atoms + 1) * params.beta());
}

/// Dimensionless free-space prefactor from the exact lag sum,
///   F_{N+1}(beta; xi) = Gamma_fs (N+1)^3 / (gamma pi^2 xi^2).
/// gamma cancels, so this is defined for all gamma including 0.
inline double fs_prefactor_discrete(const ChainParams& params, int xi) {
  const int n = params.n_atoms;
  const double beta = params.beta();
  // K_fs(0) C(0) + 2 sum_D K_fs(beta D) C(D), then rescale by (N+1)^3/(pi xi)^2.
  double sum = autocorrelation(params, xi, 0);
  for (int delta = 1; delta <= n - 1; ++delta)
    sum += 2.0 * kernel_kfs(beta * delta) * autocorrelation(params, xi, delta);
  const double np1 = n + 1;
  const double pix = std::numbers::pi * xi;
  return sum * np1 * np1 * np1 / (pix * pix);
}

/// Small-beta analytic counterpart of the prefactor, which oscillates about
/// and converges to 1/4 as N grows.
inline double fs_prefactor_analytic(const ChainParams& params, int xi) {
  return 0.25 * fs_parity_bracket(params, xi);
}

/// Exact free-space linewidth via the lag-grouped sum (O(N) per call).
inline double gamma_fs_discrete(const ChainParams& params, int xi) {
  const double pix = std::numbers::pi * xi;
  const double np1 = params.n_atoms + 1;
  return params.gamma_fs * pix * pix / (np1 * np1 * np1) *
         fs_prefactor_discrete(params, xi);
}

/// Total analytic linewidth: guided + free-space deep-subwavelength forms.
inline AnalyticPrediction gamma_total_analytic(const ChainParams& params, int xi) {
  AnalyticPrediction p;
  p.flags = regime_flags(params, xi);
  p.linewidth_guided = gamma_guided_subwavelength(params, xi);
  p.linewidth_fs = gamma_fs_analytic(params, xi);
  p.linewidth_total = p.linewidth_guided + p.linewidth_fs;
  return p;
}

struct FreeSpaceShift {
  double shift_fs = 0.0;        // asymptotic J_xi^(fs)
  double shift_infty_fs = 0.0;  // N -> infinity limit
  double finite_size_term = 0.0;
};

/// Free-space shift asymptotics: the near-field d^-3 term survives the
/// thermodynamic limit; the first finite-size effect enters at xi^2/(N+1)^2.
inline FreeSpaceShift j_fs_asymptotic(const ChainParams& params, int xi) {
  if (!(params.spacing > 0.0))
    throw std::domain_error("j_fs_asymptotic: d must be > 0");
  const double beta = params.beta();
  const double b3 = beta * beta * beta;
  const double g = params.gamma_fs;
  FreeSpaceShift r;
  r.shift_infty_fs = -9.0 * g / 8.0 * zeta3 / b3 +
                     0.75 * g * std::numbers::ln2 / beta;
  const double np1 = params.n_atoms + 1;
  const double pix = std::numbers::pi * xi;
  r.finite_size_term = 0.75 * g * pix * pix * std::numbers::ln2 / (np1 * np1 * b3);
  r.shift_fs = r.shift_infty_fs + r.finite_size_term;
  return r;
}

/// Exact free-space shift via the lag sum (diagonal self-shift excluded).
inline double j_fs_discrete(const ChainParams& params, int xi) {
  const double beta = params.beta();
  double sum = 0.0;
  for (int delta = 1; delta <= params.n_atoms - 1; ++delta)
    sum += kernel_lfs(beta * delta) * autocorrelation(params, xi, delta);
  return params.gamma_fs * sum;
}

/// Total asymptotic shift J_xi = J_infty(d) + pi^2 xi^2 C(d)/(N+1)^2 with the
/// guided/free-space decomposition recorded.
inline AnalyticPrediction j_total_asymptotic(const ChainParams& params, int xi) {
  detail::require_away_from_half_wavelength(params, "j_total_asymptotic");
  AnalyticPrediction p;
  p.flags = regime_flags(params, xi);
  const double half = 0.5 * params.beta();
  const double beta = params.beta();
  const double b3 = beta * beta * beta;
  const double band_edge_curv = 0.125 * std::sin(half) / std::pow(std::cos(half), 3);

  p.shift_guided = j_ideal(params, xi, /*open_boundary=*/true);
  const FreeSpaceShift fs = j_fs_asymptotic(params, xi);
  p.shift_fs = fs.shift_fs;
  p.shift_total = p.shift_guided + p.shift_fs;

  p.shift_infty = fs.shift_infty_fs - 0.5 * std::tan(half);
  p.finite_size_coeff =
      0.75 * params.gamma_fs * std::numbers::ln2 / b3 - band_edge_curv;
  return p;
}

/// Both halves of the prediction in one struct (used by the sweep layer).
inline AnalyticPrediction analytic_prediction(const ChainParams& params, int xi) {
  AnalyticPrediction p = j_total_asymptotic(params, xi);
  const AnalyticPrediction g = gamma_total_analytic(params, xi);
  p.linewidth_total = g.linewidth_total;
  p.linewidth_guided = g.linewidth_guided;
  p.linewidth_fs = g.linewidth_fs;
  return p;
}

// ---------------------------------------------------------------------------
// Appendix verification identities

/// Max absolute error of the angular identities over a theta grid:
///   I1(theta) = int_0^1 (1+mu^2) cos(theta mu) dmu  vs  (4/3) K_fs(theta),
/// and the full representation (3/8) int_{-1}^{1} (1+mu^2) e^{i x mu} dmu = K_fs(x).
inline double verify_angular_identity(std::span<const double> theta_grid,
                                      double quad_tol = 1e-12) {
  double max_err = 0.0;
  for (const double theta : theta_grid) {
    if (!(theta > 0.0))
      throw std::invalid_argument("verify_angular_identity: theta must be > 0");
    const int panels = std::max(8, static_cast<int>(theta));
    const double i1 = adaptive_simpson(
        [theta](double mu) { return (1.0 + mu * mu) * std::cos(theta * mu); }, 0.0,
        1.0, quad_tol, panels);
    max_err = std::max(max_err, std::abs(i1 - 4.0 / 3.0 * kernel_kfs(theta)));

    // Full angular average: the real part reproduces the kernel, the odd
    // sine part integrates to zero.
    const double re = adaptive_simpson(
        [theta](double mu) { return (1.0 + mu * mu) * std::cos(theta * mu); }, -1.0,
        1.0, quad_tol, 2 * panels);
    const double im = adaptive_simpson(
        [theta](double mu) { return (1.0 + mu * mu) * std::sin(theta * mu); }, -1.0,
        1.0, quad_tol, 2 * panels);
    max_err = std::max(max_err, std::abs(0.375 * re - kernel_kfs(theta)));
    max_err = std::max(max_err, std::abs(0.375 * im));
  }
  return max_err;
}

enum class SeriesKind { zeta3, log2 };

/// Partial sums of the alternating series entering the shift asymptotics:
///   sum_{D=1}^{m} (-1)^D / D^3  -> -(3/4) zeta(3),
///   sum_{D=1}^{m} (-1)^D / D    -> -ln 2.
inline double alternating_series(SeriesKind kind, long terms) {
  if (terms < 1) throw std::invalid_argument("alternating_series: terms must be >= 1");
  double sum = 0.0;
  for (long d = 1; d <= terms; ++d) {
    const double term = (kind == SeriesKind::zeta3)
                            ? 1.0 / (static_cast<double>(d) * d * d)
                            : 1.0 / static_cast<double>(d);
    sum += (d % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace subradiance
