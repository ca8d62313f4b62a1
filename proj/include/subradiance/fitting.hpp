#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace subradiance {

struct PowerLawFit {
  double slope = 0.0;      // exponent of the fitted power law
  double intercept = 0.0;  // log-space intercept
  double r_squared = 0.0;
  int points_used = 0;
  int points_filtered = 0;  // nonpositive values dropped from the window

  double evaluate(double n) const {
    return std::exp(intercept + slope * std::log(n));
  }
};

/// Least-squares line fit on (log N, log value) over a window of N. Points
/// with nonpositive values are filtered; fewer than 3 survivors is an error.
inline PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points,
                                 double n_min, double n_max) {
  std::vector<std::pair<double, double>> logs;
  int filtered = 0;
  for (const auto& [n, v] : points) {
    if (n < n_min || n > n_max) continue;
    if (!(v > 0.0) || !(n > 0.0)) {
      ++filtered;
      continue;
    }
    logs.emplace_back(std::log(n), std::log(v));
  }
  if (logs.size() < 3)
    throw std::invalid_argument("fit_power_law: need >= 3 positive points in window, have " +
                                std::to_string(logs.size()));

  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
  }
  const double mx = sx / logs.size(), my = sy / logs.size();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  PowerLawFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : logs) {
    const double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
  }
  fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  fit.points_used = static_cast<int>(logs.size());
  fit.points_filtered = filtered;
  return fit;
}

}  // namespace subradiance
