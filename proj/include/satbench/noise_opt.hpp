#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "satbench/error.hpp"
#include "satbench/rng.hpp"
#include "satbench/stats.hpp"
#include "satbench/walksat.hpp"

namespace satbench {

struct NoiseOptResult {
  double noise = 0.5;
  double flips = 0.0;  // objective value at the returned noise
  int probes = 0;
};

// Minimizes a noisy objective f(noise, probe_index) over [0,1]: coarse grid
// 0.1..0.9, then golden-section refinement on the interval bracketing the
// grid minimum until it is narrower than `tol`. Returns the best probe seen.
template <typename Objective>
NoiseOptResult optimize_noise_core(Objective&& objective, double tol = 0.02) {
  NoiseOptResult best;
  best.flips = std::numeric_limits<double>::infinity();
  int probe = 0;
  auto eval = [&](double p) {
    const double value = objective(p, probe++);
    if (value < best.flips) {
      best.flips = value;
      best.noise = p;
    }
    return value;
  };

  double grid_best = 0.1;
  double grid_best_value = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 9; ++i) {
    const double p = i / 10.0;
    const double v = eval(p);
    if (v < grid_best_value) {
      grid_best_value = v;
      grid_best = p;
    }
  }
  if (std::isinf(grid_best_value))
    throw BudgetExhausted("all noise probes failed to solve within budget");

  double a = std::max(0.0, grid_best - 0.1);
  double b = std::min(1.0, grid_best + 0.1);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = eval(c);
  double fd = eval(d);
  while (b - a >= tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = eval(d);
    }
  }
  best.probes = probe;
  return best;
}

// Per-instance noise tuning: each probe reruns WalkSAT `runs_per_probe`
// times with seeds derived from (stream_seed, probe index, run index) and
// scores the probe by the median flips; censored probes score infinity.
// `record_sink`, when set, receives every run.
inline NoiseOptResult optimize_noise(
    const CnfFormula& formula, const WalkSatParams& base, int runs_per_probe,
    std::uint64_t stream_seed, double tol = 0.02,
    const std::function<void(const RunRecord&, int probe_index)>& record_sink = {},
    std::string instance_id = "") {
  if (runs_per_probe < 1) throw InvalidArgument("runs_per_probe must be >= 1");
  WalkSatEngine engine(formula);
  auto objective = [&](double noise, int probe_index) {
    std::vector<RunRecord> records;
    records.reserve(static_cast<std::size_t>(runs_per_probe));
    for (int r = 0; r < runs_per_probe; ++r) {
      WalkSatParams params = base;
      params.noise = noise;
      params.seed = derive_seed(stream_seed, {static_cast<std::uint64_t>(probe_index),
                                              static_cast<std::uint64_t>(r)});
      Rng rng(params.seed);
      records.push_back(engine.run(params, rng, instance_id));
      if (record_sink) record_sink(records.back(), probe_index);
    }
    const FlipsStats stats = median_flips(records);
    return stats.censored ? std::numeric_limits<double>::infinity() : stats.median;
  };
  return optimize_noise_core(objective, tol);
}

}  // namespace satbench
