#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "satbench/error.hpp"
#include "satbench/walksat.hpp"

namespace satbench {

// Median and quartiles of flips-to-solution over a set of runs. Unsolved
// runs sort above every finite value; a statistic whose rank lands on an
// unsolved run is reported as NaN, and the bundle is flagged censored when
// at least half the runs are unsolved.
struct FlipsStats {
  std::size_t n = 0;
  std::size_t n_solved = 0;
  double solved_fraction = 0.0;
  bool censored = false;
  double median = std::numeric_limits<double>::quiet_NaN();
  double q25 = std::numeric_limits<double>::quiet_NaN();
  double q75 = std::numeric_limits<double>::quiet_NaN();
};

// Core over plain values: nullopt marks an unsolved run.
inline FlipsStats flips_stats(const std::vector<std::optional<double>>& values) {
  if (values.empty()) throw InvalidArgument("flips statistics on empty value set");

  std::vector<double> solved;
  solved.reserve(values.size());
  for (const auto& v : values)
    if (v) solved.push_back(*v);
  std::sort(solved.begin(), solved.end());

  FlipsStats s;
  s.n = values.size();
  s.n_solved = solved.size();
  s.solved_fraction = static_cast<double>(s.n_solved) / static_cast<double>(s.n);
  s.censored = 2 * (s.n - s.n_solved) >= s.n;

  // linear interpolation between order statistics; indices at or past
  // n_solved touch unsolved runs and yield NaN
  auto quantile = [&](double q) {
    const double h = q * static_cast<double>(s.n - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo >= s.n_solved) return std::numeric_limits<double>::quiet_NaN();
    if (frac == 0.0) return solved[lo];
    const std::size_t hi = lo + 1;
    if (hi >= s.n_solved) return std::numeric_limits<double>::quiet_NaN();
    return solved[lo] + frac * (solved[hi] - solved[lo]);
  };
  s.q25 = quantile(0.25);
  s.median = quantile(0.5);
  s.q75 = quantile(0.75);
  return s;
}

inline FlipsStats median_flips(const std::vector<RunRecord>& records) {
  if (records.empty()) throw InvalidArgument("median_flips on empty record set");
  std::vector<std::optional<double>> values;
  values.reserve(records.size());
  for (const auto& r : records) {
    if (r.flips)
      values.emplace_back(static_cast<double>(*r.flips));
    else
      values.emplace_back(std::nullopt);
  }
  return flips_stats(values);
}

}  // namespace satbench
