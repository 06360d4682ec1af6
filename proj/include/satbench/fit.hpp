#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "satbench/error.hpp"

namespace satbench {

// Least-squares fit of median flips to A * exp(mu * N) on a window of
// sizes, done as OLS of ln(median) against N.
struct ScalingFit {
  double a = 0.0;
  double mu = 0.0;
  double stderr_mu = 0.0;
  std::vector<int> window_sizes;
  std::vector<double> residuals;  // ln(median) - fit, per window point
};

struct FitPoint {
  int n;
  double median;
};

inline ScalingFit fit_exponential(const std::vector<FitPoint>& window) {
  if (window.size() < 3) throw InvalidArgument("fit window < 3 points");
  for (const auto& p : window)
    if (!(p.median > 0.0))
      throw InvalidArgument("non-positive or censored median at N = " +
                            std::to_string(p.n));

  const double n = static_cast<double>(window.size());
  double sx = 0, sy = 0;
  for (const auto& p : window) {
    sx += p.n;
    sy += std::log(p.median);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& p : window) {
    const double dx = p.n - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.median) - my);
  }
  if (sxx == 0.0) throw InvalidArgument("degenerate fit window: all sizes equal");

  ScalingFit fit;
  fit.mu = sxy / sxx;
  fit.a = std::exp(my - fit.mu * mx);
  double ss_res = 0;
  for (const auto& p : window) {
    const double r = std::log(p.median) - (std::log(fit.a) + fit.mu * p.n);
    fit.residuals.push_back(r);
    fit.window_sizes.push_back(p.n);
    ss_res += r * r;
  }
  fit.stderr_mu =
      window.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  return fit;
}

// Default fit window: the largest ceil(half) of the ladder.
inline std::vector<FitPoint> default_fit_window(const std::vector<FitPoint>& points) {
  const std::size_t keep = (points.size() + 1) / 2;
  return {points.end() - static_cast<std::ptrdiff_t>(keep), points.end()};
}

}  // namespace satbench
