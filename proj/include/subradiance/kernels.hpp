#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace subradiance {

/// Below this argument the closed form of the dissipative kernel loses ~9
/// digits to cancellation of the 1/x^2-scale terms; switch to the series.
inline constexpr double kfs_series_threshold = 1e-3;

/// Free-space dissipative kernel for dipoles perpendicular to the chain,
///   K_fs(x) = (3/2) [ sin x / x + cos x / x^2 - sin x / x^3 ],
/// regularized to K_fs(0) = 1. Total on x >= 0.
inline double kernel_kfs(double x) {
  if (x < 0.0) throw std::domain_error("kernel_kfs: x must be >= 0");
  if (x < kfs_series_threshold) {
    // K_fs(x) = 1 - x^2/5 + 3 x^4/280 + O(x^6)
    const double x2 = x * x;
    return 1.0 - x2 / 5.0 + 3.0 * x2 * x2 / 280.0;
  }
  const double s = std::sin(x), c = std::cos(x);
  return 1.5 * (s / x + c / (x * x) - s / (x * x * x));
}

/// Free-space shift kernel,
///   L_fs(x) = (3/2) [ -cos x / x + sin x / x^2 + cos x / x^3 ].
/// Diverges as x^-3 at the origin (physical near field); the diagonal
/// self-shift is absorbed into the renormalized transition frequency,
/// so x == 0 is a domain error.
inline double kernel_lfs(double x) {
  if (!(x > 0.0))
    throw std::domain_error("kernel_lfs: x must be > 0 (unregularized self-term at 0)");
  const double s = std::sin(x), c = std::cos(x);
  return 1.5 * (-c / x + s / (x * x) + c / (x * x * x));
}

/// Free-space dipole-dipole coupling for perpendicular dipoles,
///   V(x) = (3 gamma / 4) [ -i/x + 1/x^2 + i/x^3 ],  x = k0 |z_j - z_l|.
/// Satisfies 2 Re[V e^{ix}] = gamma K_fs(x) and 2 Im[V e^{ix}] = gamma L_fs(x).
inline std::complex<double> coupling_vjl(double x, double gamma = 1.0) {
  if (!(x > 0.0))
    throw std::domain_error("coupling_vjl: x must be > 0 (self-coupling excluded)");
  const double x2 = x * x, x3 = x2 * x;
  return 0.75 * gamma * std::complex<double>(1.0 / x2, -1.0 / x + 1.0 / x3);
}

}  // namespace subradiance
