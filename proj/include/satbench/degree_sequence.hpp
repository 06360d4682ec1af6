#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "satbench/error.hpp"
#include "satbench/rng.hpp"

namespace satbench {

constexpr std::int64_t kDefaultRejectionCap = 1'000'000;

// Mean of a Poisson(lambda) conditioned on values >= 2:
//   lambda (1 - e^-lambda) / (1 - e^-lambda - lambda e^-lambda).
inline double truncated_poisson_mean(double lambda) {
  const double e = std::exp(-lambda);
  return lambda * (1.0 - e) / (1.0 - e - lambda * e);
}

// Solves truncated_poisson_mean(lambda) = mean by bisection. The truncated
// mean is increasing in lambda and tends to 2 as lambda -> 0.
inline double truncated_poisson_rate(double mean) {
  if (!(mean > 2.0))
    throw InvalidArgument("truncated Poisson mean must exceed 2");
  double lo = 1e-12, hi = 2.0;
  while (truncated_poisson_mean(hi) < mean) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (truncated_poisson_mean(mid) < mean ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Degrees of the variable side of the bipartite variable-clause graph.
struct DegreeSequence {
  std::vector<int> degrees;
  std::int64_t target_sum = 0;

  std::int64_t sum() const {
    std::int64_t s = 0;
    for (int d : degrees) s += d;
    return s;
  }
};

namespace detail {

// Inverse-CDF table for Poisson(lambda) conditioned on k >= 2.
class TruncatedPoissonSampler {
public:
  explicit TruncatedPoissonSampler(double lambda) {
    // pmf proportional to lambda^k / k! for k >= 2
    double e = std::exp(-lambda);
    double norm = 1.0 - e - lambda * e;
    double term = e * lambda * lambda / 2.0;  // k = 2
    double cum = 0.0;
    int k = 2;
    while (true) {
      cum += term / norm;
      cdf_.push_back(cum);
      if (cum >= 1.0 - 1e-15 || k > 2 + 60 + static_cast<int>(8 * lambda)) break;
      ++k;
      term *= lambda / k;
    }
    cdf_.back() = 1.0;
  }

  int sample(Rng& rng) const {
    const double u = rng.next_double();
    int k = 2;
    for (double c : cdf_) {
      if (u < c) return k;
      ++k;
    }
    return k - 1;
  }

private:
  std::vector<double> cdf_;
};

}  // namespace detail

// Draws per-variable degrees i.i.d. from Poisson(lambda) conditioned on
// >= 2, with lambda solved so the conditioned mean is target_sum/n_vars.
// Whole sequences are rejected until the sum hits target_sum exactly;
// per-site repair would distort the law.
inline DegreeSequence sample_truncated_poisson_degrees(
    int n_vars, std::int64_t target_sum, Rng& rng,
    std::int64_t max_attempts = kDefaultRejectionCap) {
  if (n_vars <= 0) throw InvalidArgument("n_vars must be positive");
  if (target_sum < 2 * static_cast<std::int64_t>(n_vars))
    throw InvalidArgument("target_sum " + std::to_string(target_sum) +
                          " infeasible: minimum degree 2 forces sum >= " +
                          std::to_string(2 * static_cast<std::int64_t>(n_vars)));

  DegreeSequence seq;
  seq.target_sum = target_sum;
  if (target_sum == 2 * static_cast<std::int64_t>(n_vars)) {
    // lambda -> 0 limit: the law degenerates to all degrees 2.
    seq.degrees.assign(static_cast<std::size_t>(n_vars), 2);
    return seq;
  }

  const double mean = static_cast<double>(target_sum) / n_vars;
  const detail::TruncatedPoissonSampler sampler(truncated_poisson_rate(mean));
  seq.degrees.resize(static_cast<std::size_t>(n_vars));
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::int64_t sum = 0;
    for (auto& d : seq.degrees) {
      d = sampler.sample(rng);
      sum += d;
    }
    if (sum == target_sum) return seq;
  }
  throw BudgetExhausted("degree sequence rejection budget exhausted after " +
                        std::to_string(max_attempts) + " attempts");
}

}  // namespace satbench
