#pragma once

#include <cstdint>
#include <optional>

#include "satbench/cnf.hpp"
#include "satbench/dpll.hpp"
#include "satbench/gf2.hpp"
#include "satbench/instance.hpp"

namespace satbench {

struct UsaResult {
  bool unique = false;
  bool budget_exceeded = false;
  std::optional<Assignment> solution;
};

// True iff the instance has exactly one satisfying assignment. XORSAT goes
// through GF(2) rank (unique iff consistent and rank = N); everything else
// through DPLL counting capped at two. When unique, the solution is stored
// in known_solution.
inline UsaResult filter_usa(Instance& inst,
                            std::uint64_t dpll_node_budget = kDefaultDpllNodeBudget) {
  UsaResult res;
  if (is_xorsat(inst.family)) {
    const Gf2Solution sol = gf2_solve(Gf2System::from_instance(inst));
    if (sol.consistent && sol.rank == inst.n_vars) {
      res.unique = true;
      res.solution = sol.witness;
      inst.known_solution = sol.witness;
    }
    return res;
  }
  const auto outcome = dpll_count_upto2(encode_instance(inst), dpll_node_budget);
  if (!outcome) {
    res.budget_exceeded = true;
    return res;
  }
  if (outcome->count_class == CountClass::One) {
    res.unique = true;
    res.solution = outcome->witness;
    inst.known_solution = outcome->witness;
  }
  return res;
}

}  // namespace satbench
