#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "satbench/degree_sequence.hpp"
#include "satbench/instance.hpp"
#include "satbench/rng.hpp"

namespace satbench {

namespace detail {

// Configuration-model stub matching: variable v contributes degrees[v]
// stubs, the stub list is shuffled and cut into clause slots. A matching
// with a repeated variable inside any clause is rejected wholesale.
inline std::vector<NativeClause> match_stubs(const std::vector<int>& degrees,
                                             int arity, int n_clauses, Rng& rng,
                                             std::int64_t max_attempts) {
  std::vector<std::int32_t> stubs;
  stubs.reserve(static_cast<std::size_t>(arity) * n_clauses);
  for (std::size_t v = 0; v < degrees.size(); ++v)
    for (int k = 0; k < degrees[v]; ++k) stubs.push_back(static_cast<std::int32_t>(v));
  if (static_cast<std::int64_t>(stubs.size()) !=
      static_cast<std::int64_t>(arity) * n_clauses)
    throw InvalidArgument("degree sum does not match clause slots");

  std::vector<NativeClause> clauses(static_cast<std::size_t>(n_clauses));
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    // Fisher-Yates
    for (std::size_t i = stubs.size(); i > 1; --i)
      std::swap(stubs[i - 1], stubs[rng.next_below(i)]);

    bool ok = true;
    for (int c = 0; c < n_clauses && ok; ++c) {
      auto* slot = &stubs[static_cast<std::size_t>(c) * arity];
      for (int i = 1; i < arity && ok; ++i)
        for (int j = 0; j < i; ++j)
          if (slot[i] == slot[j]) {
            ok = false;
            break;
          }
    }
    if (!ok) continue;

    for (int c = 0; c < n_clauses; ++c) {
      auto& cl = clauses[static_cast<std::size_t>(c)];
      cl.arity = static_cast<std::uint8_t>(arity);
      for (int i = 0; i < arity; ++i)
        cl.vars[static_cast<std::size_t>(i)] =
            stubs[static_cast<std::size_t>(c) * arity + i];
    }
    return clauses;
  }
  throw BudgetExhausted("stub matching rejection budget exhausted");
}

}  // namespace detail

// Iteratively removes clauses that share at most one variable with the
// union of all other clauses, then drops variables left in zero clauses
// and renumbers. The surviving set is the unique maximal fixed point, so
// re-applying the rule changes nothing.
inline Instance prune_exact_cover(Instance inst) {
  std::vector<int> occ(static_cast<std::size_t>(inst.n_vars), 0);
  for (const auto& c : inst.clauses)
    for (auto v : c) ++occ[static_cast<std::size_t>(v)];

  std::vector<char> removed(inst.clauses.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t ci = 0; ci < inst.clauses.size(); ++ci) {
      if (removed[ci]) continue;
      int shared = 0;
      for (auto v : inst.clauses[ci])
        if (occ[static_cast<std::size_t>(v)] >= 2) ++shared;
      if (shared <= 1) {
        removed[ci] = 1;
        changed = true;
        for (auto v : inst.clauses[ci]) --occ[static_cast<std::size_t>(v)];
      }
    }
  }

  // Renumber surviving variables compactly, preserving order.
  std::vector<std::int32_t> remap(static_cast<std::size_t>(inst.n_vars), -1);
  std::int32_t next = 0;
  for (int v = 0; v < inst.n_vars; ++v)
    if (occ[static_cast<std::size_t>(v)] > 0) remap[static_cast<std::size_t>(v)] = next++;

  Instance out;
  out.family = inst.family;
  out.n_vars = next;
  for (std::size_t ci = 0; ci < inst.clauses.size(); ++ci) {
    if (removed[ci]) continue;
    NativeClause c = inst.clauses[ci];
    for (int i = 0; i < c.arity; ++i)
      c.vars[static_cast<std::size_t>(i)] =
          remap[static_cast<std::size_t>(c.vars[static_cast<std::size_t>(i)])];
    out.clauses.push_back(c);
  }
  if (inst.known_solution) {
    Assignment sol(static_cast<std::size_t>(next), 0);
    for (int v = 0; v < inst.n_vars; ++v)
      if (remap[static_cast<std::size_t>(v)] >= 0)
        sol[static_cast<std::size_t>(remap[static_cast<std::size_t>(v)])] =
            (*inst.known_solution)[static_cast<std::size_t>(v)];
    out.known_solution = std::move(sol);
  }
  return out;
}

// Exact Cover: M clauses drawn as uniform random distinct 3-subsets, then
// pruned. The returned instance can be smaller than requested, possibly
// empty.
inline Instance generate_unlocked_1in3(const ModelSpec& spec, Rng& rng,
                                       std::int64_t max_attempts = kDefaultRejectionCap) {
  if (spec.family != ModelFamily::Unlocked1In3)
    throw InvalidArgument("spec family is not unlocked-1in3");
  const int n = spec.n_vars;
  if (n < 3) throw InvalidArgument("unlocked-1in3 needs at least 3 variables");

  Instance inst;
  inst.family = spec.family;
  inst.n_vars = n;
  std::set<std::array<std::int32_t, 3>> seen;
  std::int64_t attempts = 0;
  while (static_cast<int>(inst.clauses.size()) < spec.n_clauses) {
    if (++attempts > max_attempts)
      throw BudgetExhausted("distinct 3-subset rejection budget exhausted");
    std::array<std::int32_t, 3> pick{};
    pick[0] = static_cast<std::int32_t>(rng.next_below(static_cast<std::uint64_t>(n)));
    do {
      pick[1] = static_cast<std::int32_t>(rng.next_below(static_cast<std::uint64_t>(n)));
    } while (pick[1] == pick[0]);
    do {
      pick[2] = static_cast<std::int32_t>(rng.next_below(static_cast<std::uint64_t>(n)));
    } while (pick[2] == pick[0] || pick[2] == pick[1]);

    auto key = pick;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) continue;  // duplicate clause, redraw

    inst.clauses.push_back(make_clause(ClauseKind::Exactly1Of3, {pick[0], pick[1], pick[2]}));
  }
  return prune_exact_cover(std::move(inst));
}

// Locked 1-in-3 / 2-in-4: truncated-Poisson degrees with sum K*M, matched
// to clause slots by the configuration model. Every variable ends up in at
// least two clauses.
inline Instance generate_locked(const ModelSpec& spec, Rng& rng,
                                std::int64_t max_attempts = kDefaultRejectionCap) {
  if (!is_locked(spec.family))
    throw InvalidArgument("spec family is not a locked family");
  const int arity = spec.arity();
  const std::int64_t target = static_cast<std::int64_t>(arity) * spec.n_clauses;
  DegreeSequence seq =
      sample_truncated_poisson_degrees(spec.n_vars, target, rng, max_attempts);

  Instance inst;
  inst.family = spec.family;
  inst.n_vars = spec.n_vars;
  inst.clauses = detail::match_stubs(seq.degrees, arity, spec.n_clauses, rng, max_attempts);
  const ClauseKind kind = clause_kind(spec.family);
  for (auto& c : inst.clauses) c.kind = kind;
  return inst;
}

// 3-XORSAT, both degree flavors, in gauged form: every clause parity is 0,
// so the all-zeros assignment satisfies the instance by construction. Set
// random_parity to get raw (possibly unsatisfiable) instances instead.
inline Instance generate_xorsat(const ModelSpec& spec, Rng& rng,
                                bool random_parity = false,
                                std::int64_t max_attempts = kDefaultRejectionCap) {
  if (!is_xorsat(spec.family))
    throw InvalidArgument("spec family is not an XORSAT family");

  std::vector<int> degrees;
  if (spec.family == ModelFamily::Xorsat3Reg) {
    if (spec.n_clauses != spec.n_vars)
      throw InvalidArgument("3-regular 3-XORSAT requires M = N");
    degrees.assign(static_cast<std::size_t>(spec.n_vars), 3);
  } else {
    const std::int64_t target = 3ll * spec.n_clauses;
    degrees =
        sample_truncated_poisson_degrees(spec.n_vars, target, rng, max_attempts).degrees;
  }

  Instance inst;
  inst.family = spec.family;
  inst.n_vars = spec.n_vars;
  inst.clauses = detail::match_stubs(degrees, 3, spec.n_clauses, rng, max_attempts);
  for (auto& c : inst.clauses) {
    c.kind = ClauseKind::XorParity;
    c.parity = random_parity ? static_cast<std::uint8_t>(rng.next_bool()) : 0;
  }
  if (!random_parity)
    inst.known_solution = Assignment(static_cast<std::size_t>(inst.n_vars), 0);
  return inst;
}

inline Instance generate(const ModelSpec& spec, Rng& rng,
                         std::int64_t max_attempts = kDefaultRejectionCap) {
  switch (spec.family) {
    case ModelFamily::Unlocked1In3: return generate_unlocked_1in3(spec, rng, max_attempts);
    case ModelFamily::Locked1In3:
    case ModelFamily::Locked2In4: return generate_locked(spec, rng, max_attempts);
    default: return generate_xorsat(spec, rng, false, max_attempts);
  }
}

// Relabels bits by XOR with a satisfying assignment: each clause parity is
// flipped by the parity of `solution` on its variables. The result is
// satisfied by all-zeros and its solution set is the original one XOR
// `solution`. Applying the same transform twice is the identity.
inline Instance gauge_transform(const Instance& inst, const Assignment& solution) {
  if (!is_xorsat(inst.family))
    throw InvalidArgument("gauge transform applies to XORSAT instances only");
  if (solution.size() != static_cast<std::size_t>(inst.n_vars))
    throw InvalidArgument("solution length does not match instance");
  if (!inst.satisfied_by(solution))
    throw InvalidArgument("gauge transform requires a satisfying assignment");

  Instance out = inst;
  for (auto& c : out.clauses) {
    int sum = 0;
    for (auto v : c) sum += solution[static_cast<std::size_t>(v)];
    c.parity = static_cast<std::uint8_t>(c.parity ^ (sum & 1));
  }
  out.known_solution = Assignment(static_cast<std::size_t>(inst.n_vars), 0);
  return out;
}

}  // namespace satbench
