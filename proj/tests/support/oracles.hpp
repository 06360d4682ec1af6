#pragma once

// Independent test oracles. Everything here evaluates semantics from
// scratch (bit twiddling over packed assignments) so the checks do not
// share code with the library paths they verify.

#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "satbench/cnf.hpp"
#include "satbench/instance.hpp"

namespace oracle {

inline satbench::Assignment unpack(std::uint32_t bits, int n_vars) {
  satbench::Assignment a(static_cast<std::size_t>(n_vars));
  for (int v = 0; v < n_vars; ++v) a[static_cast<std::size_t>(v)] = (bits >> v) & 1u;
  return a;
}

inline std::uint32_t pack(const satbench::Assignment& a) {
  std::uint32_t bits = 0;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a[v]) bits |= 1u << v;
  return bits;
}

inline bool native_clause_satisfied(const satbench::NativeClause& c, std::uint32_t bits) {
  int sum = 0;
  for (int i = 0; i < c.arity; ++i) sum += (bits >> c.vars[static_cast<std::size_t>(i)]) & 1u;
  switch (c.kind) {
    case satbench::ClauseKind::Exactly1Of3: return sum == 1;
    case satbench::ClauseKind::Exactly2Of4: return sum == 2;
    case satbench::ClauseKind::XorParity: return (sum & 1) == c.parity;
  }
  return false;
}

// All satisfying assignments of a native instance, by exhaustive
// enumeration (n_vars <= 26).
inline std::set<std::uint32_t> enumerate_native(const satbench::Instance& inst) {
  std::set<std::uint32_t> solutions;
  const std::uint64_t total = 1ull << inst.n_vars;
  for (std::uint64_t a = 0; a < total; ++a) {
    bool ok = true;
    for (const auto& c : inst.clauses)
      if (!native_clause_satisfied(c, static_cast<std::uint32_t>(a))) {
        ok = false;
        break;
      }
    if (ok) solutions.insert(static_cast<std::uint32_t>(a));
  }
  return solutions;
}

inline bool cnf_clause_satisfied(const satbench::CnfClause& clause, std::uint32_t bits) {
  for (const auto& lit : clause) {
    const bool val = (bits >> lit.var) & 1u;
    if (val != lit.neg) return true;
  }
  return false;
}

inline std::set<std::uint32_t> enumerate_cnf(const satbench::CnfFormula& f) {
  std::set<std::uint32_t> solutions;
  const std::uint64_t total = 1ull << f.n_vars;
  for (std::uint64_t a = 0; a < total; ++a) {
    bool ok = true;
    for (const auto& clause : f.clauses)
      if (!cnf_clause_satisfied(clause, static_cast<std::uint32_t>(a))) {
        ok = false;
        break;
      }
    if (ok) solutions.insert(static_cast<std::uint32_t>(a));
  }
  return solutions;
}

// Pearson chi-square of observed degree counts against the Poisson(lambda)
// law conditioned on k >= 2. Bins with expected count < 5 are merged into
// the tail; returns the statistic and the bin count.
struct ChiSquare {
  double statistic;
  int bins;
};

inline ChiSquare chi_square_truncated_poisson(const std::vector<int>& degrees,
                                              double lambda) {
  int max_deg = 2;
  for (int d : degrees) max_deg = std::max(max_deg, d);
  std::vector<double> expected;  // index 0 <-> degree 2
  {
    // conditioned pmf, computed with incremental terms
    double e = 1.0;
    for (int i = 1; i <= 60; ++i) e *= std::exp(-lambda / 60.0);
    double norm = 1.0 - e - lambda * e;
    double term = e * lambda * lambda / 2.0;
    for (int k = 2; k <= max_deg + 40; ++k) {
      expected.push_back(term / norm * static_cast<double>(degrees.size()));
      term *= lambda / (k + 1);
    }
  }
  std::vector<double> observed(expected.size(), 0.0);
  for (int d : degrees) observed[static_cast<std::size_t>(d - 2)] += 1.0;

  // merge the tail so every bin expects at least 5
  double stat = 0.0;
  int bins = 0;
  double tail_obs = 0.0, tail_exp = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (expected[k] >= 5.0 && tail_exp == 0.0) {
      stat += (observed[k] - expected[k]) * (observed[k] - expected[k]) / expected[k];
      ++bins;
    } else {
      tail_obs += observed[k];
      tail_exp += expected[k];
    }
  }
  if (tail_exp > 0.0) {
    stat += (tail_obs - tail_exp) * (tail_obs - tail_exp) / tail_exp;
    ++bins;
  }
  return {stat, bins};
}

}  // namespace oracle
