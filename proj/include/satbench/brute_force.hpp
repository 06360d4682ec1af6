#pragma once

#include <cstdint>
#include <vector>

#include "satbench/cnf.hpp"
#include "satbench/error.hpp"

namespace satbench {

constexpr int kBruteForceMaxVars = 26;

struct BruteForceResult {
  std::uint64_t count = 0;  // min(true count, cap)
  std::vector<Assignment> witnesses;  // first models found, at most two
};

// Testing oracle: enumerates all 2^n_vars assignments. Clauses are packed
// into positive/negative masks so a clause check is two ANDs.
inline BruteForceResult brute_force_count(const CnfFormula& f,
                                          std::uint64_t cap = UINT64_MAX) {
  if (f.n_vars > kBruteForceMaxVars)
    throw InvalidArgument("brute force enumeration limited to " +
                          std::to_string(kBruteForceMaxVars) + " variables");

  struct Masks {
    std::uint32_t pos, neg;
  };
  std::vector<Masks> masks;
  masks.reserve(f.clauses.size());
  for (const auto& clause : f.clauses) {
    Masks m{0, 0};
    for (const auto& lit : clause)
      (lit.neg ? m.neg : m.pos) |= 1u << lit.var;
    masks.push_back(m);
  }

  BruteForceResult res;
  const std::uint64_t total = 1ull << f.n_vars;
  for (std::uint64_t a = 0; a < total; ++a) {
    bool sat = true;
    for (const auto& m : masks)
      if ((a & m.pos) == 0 && (~a & m.neg) == 0) {
        sat = false;
        break;
      }
    if (!sat) continue;
    if (res.witnesses.size() < 2) {
      Assignment w(static_cast<std::size_t>(f.n_vars));
      for (int v = 0; v < f.n_vars; ++v) w[static_cast<std::size_t>(v)] = (a >> v) & 1u;
      res.witnesses.push_back(std::move(w));
    }
    if (++res.count >= cap) break;
  }
  return res;
}

}  // namespace satbench
