#pragma once

#include <cmath>
#include <stdexcept>

namespace subradiance {

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol,
                            int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0)
    throw std::runtime_error("adaptive_simpson: recursion depth exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature with an absolute tolerance. The interval is
/// pre-split so oscillatory integrands start resolved per half-period.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int initial_panels = 8, int max_depth = 48) {
  if (!(b > a)) throw std::invalid_argument("adaptive_simpson: need b > a");
  if (initial_panels < 1) initial_panels = 1;
  const double h = (b - a) / initial_panels;
  const double panel_tol = abs_tol / initial_panels;
  double total = 0.0;
  for (int k = 0; k < initial_panels; ++k) {
    const double x0 = a + k * h, x1 = (k + 1 == initial_panels) ? b : x0 + h;
    const double xm = 0.5 * (x0 + x1);
    const double f0 = f(x0), f1 = f(x1), fm = f(xm);
    const double whole = detail::simpson(x0, f0, x1, f1, fm);
    total += detail::adaptive_simpson_rec(f, x0, f0, x1, f1, xm, fm, whole,
                                          panel_tol, max_depth);
  }
  return total;
}

}  // namespace subradiance
