#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "satbench/cnf.hpp"
#include "satbench/error.hpp"

namespace satbench {

constexpr std::uint64_t kDefaultDpllNodeBudget = 1'000'000'000ull;

enum class CountClass { Zero, One, TwoOrMore };

struct SolveOutcome {
  CountClass count_class = CountClass::Zero;
  std::optional<Assignment> witness;
  std::optional<Assignment> second_witness;
};

namespace detail {

// Counter-based DPLL that keeps searching past the first model until a
// second distinct one is found or the tree is exhausted. Unit propagation
// only; no pure-literal rule, which would be unsound for counting.
class DpllCounter {
public:
  DpllCounter(const CnfFormula& f, std::uint64_t node_budget)
      : budget_(node_budget), n_vars_(f.n_vars), n_clauses_(static_cast<int>(f.clauses.size())) {
    clause_begin_.reserve(f.clauses.size() + 1);
    clause_begin_.push_back(0);
    for (const auto& clause : f.clauses) {
      for (const auto& lit : clause) lits_.push_back(encode(lit));
      clause_begin_.push_back(static_cast<std::int32_t>(lits_.size()));
    }
    occ_begin_.assign(static_cast<std::size_t>(2 * n_vars_) + 1, 0);
    for (auto el : lits_) ++occ_begin_[static_cast<std::size_t>(el) + 1];
    for (std::size_t i = 1; i < occ_begin_.size(); ++i) occ_begin_[i] += occ_begin_[i - 1];
    occ_.resize(lits_.size());
    {
      std::vector<std::int32_t> cursor(occ_begin_.begin(), occ_begin_.end() - 1);
      for (int c = 0; c < n_clauses_; ++c)
        for (auto i = clause_begin_[static_cast<std::size_t>(c)];
             i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i)
          occ_[static_cast<std::size_t>(
              cursor[static_cast<std::size_t>(lits_[static_cast<std::size_t>(i)])]++)] = c;
    }
    value_.assign(static_cast<std::size_t>(n_vars_), -1);
    n_unassigned_.resize(static_cast<std::size_t>(n_clauses_));
    n_true_.assign(static_cast<std::size_t>(n_clauses_), 0);
    for (int c = 0; c < n_clauses_; ++c)
      n_unassigned_[static_cast<std::size_t>(c)] =
          clause_begin_[static_cast<std::size_t>(c) + 1] -
          clause_begin_[static_cast<std::size_t>(c)];
  }

  std::optional<SolveOutcome> run() {
    // empty clause at construction time cannot occur for encoded instances,
    // but handle parsed formulas anyway
    for (int c = 0; c < n_clauses_; ++c)
      if (n_unassigned_[static_cast<std::size_t>(c)] == 0)
        return SolveOutcome{CountClass::Zero, std::nullopt, std::nullopt};

    search();
    if (aborted_) return std::nullopt;

    SolveOutcome out;
    if (models_ == 0) {
      out.count_class = CountClass::Zero;
    } else if (models_ == 1) {
      out.count_class = CountClass::One;
      out.witness = witness_[0];
    } else {
      out.count_class = CountClass::TwoOrMore;
      out.witness = witness_[0];
      out.second_witness = witness_[1];
    }
    return out;
  }

private:
  static std::int32_t encode(const Lit& lit) { return 2 * lit.var + (lit.neg ? 1 : 0); }

  // assigns var = val, updates counters, queues implied units
  bool assign(int var, int val) {
    value_[static_cast<std::size_t>(var)] = static_cast<std::int8_t>(val);
    trail_.push_back(var);
    const std::int32_t true_lit = 2 * var + (val ? 0 : 1);
    const std::int32_t false_lit = true_lit ^ 1;
    for (auto i = occ_begin_[static_cast<std::size_t>(true_lit)];
         i < occ_begin_[static_cast<std::size_t>(true_lit) + 1]; ++i) {
      const int c = occ_[static_cast<std::size_t>(i)];
      if (n_true_[static_cast<std::size_t>(c)]++ == 0) ++sat_clauses_;
      --n_unassigned_[static_cast<std::size_t>(c)];
    }
    bool conflict = false;
    for (auto i = occ_begin_[static_cast<std::size_t>(false_lit)];
         i < occ_begin_[static_cast<std::size_t>(false_lit) + 1]; ++i) {
      const int c = occ_[static_cast<std::size_t>(i)];
      const int left = --n_unassigned_[static_cast<std::size_t>(c)];
      if (n_true_[static_cast<std::size_t>(c)] == 0) {
        if (left == 0) conflict = true;
        else if (left == 1) unit_queue_.push_back(c);
      }
    }
    return !conflict;
  }

  void unassign(int var) {
    const int val = value_[static_cast<std::size_t>(var)];
    const std::int32_t true_lit = 2 * var + (val ? 0 : 1);
    const std::int32_t false_lit = true_lit ^ 1;
    for (auto i = occ_begin_[static_cast<std::size_t>(true_lit)];
         i < occ_begin_[static_cast<std::size_t>(true_lit) + 1]; ++i) {
      const int c = occ_[static_cast<std::size_t>(i)];
      if (--n_true_[static_cast<std::size_t>(c)] == 0) --sat_clauses_;
      ++n_unassigned_[static_cast<std::size_t>(c)];
    }
    for (auto i = occ_begin_[static_cast<std::size_t>(false_lit)];
         i < occ_begin_[static_cast<std::size_t>(false_lit) + 1]; ++i)
      ++n_unassigned_[static_cast<std::size_t>(occ_[static_cast<std::size_t>(i)])];
    value_[static_cast<std::size_t>(var)] = -1;
  }

  void backtrack_to(std::size_t mark) {
    while (trail_.size() > mark) {
      unassign(trail_.back());
      trail_.pop_back();
    }
  }

  // propagates queued units; false on conflict
  bool propagate() {
    while (!unit_queue_.empty()) {
      const int c = unit_queue_.back();
      unit_queue_.pop_back();
      if (n_true_[static_cast<std::size_t>(c)] > 0) continue;
      if (n_unassigned_[static_cast<std::size_t>(c)] != 1) continue;  // stale entry
      std::int32_t unit = -1;
      for (auto i = clause_begin_[static_cast<std::size_t>(c)];
           i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i) {
        const auto el = lits_[static_cast<std::size_t>(i)];
        if (value_[static_cast<std::size_t>(el >> 1)] < 0) {
          unit = el;
          break;
        }
      }
      if (unit < 0) continue;
      if (!assign(unit >> 1, (unit & 1) ? 0 : 1)) {
        unit_queue_.clear();
        return false;
      }
    }
    return true;
  }

  void record_model_block(int free_vars) {
    // current assignment extended with free/unassigned variables at 0;
    // free_vars > 0 contributes 2^free_vars models, of which we keep two
    Assignment a(static_cast<std::size_t>(n_vars_), 0);
    int first_free = -1;
    for (int v = 0; v < n_vars_; ++v) {
      if (value_[static_cast<std::size_t>(v)] < 0) {
        if (first_free < 0) first_free = v;
        a[static_cast<std::size_t>(v)] = 0;
      } else {
        a[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(value_[static_cast<std::size_t>(v)]);
      }
    }
    push_model(a);
    if (models_ < 2 && free_vars > 0) {
      a[static_cast<std::size_t>(first_free)] ^= 1;
      push_model(a);
    }
  }

  void push_model(const Assignment& a) {
    if (models_ < 2) witness_[models_] = a;
    ++models_;
  }

  // MOMS: most occurrences among the shortest unsatisfied clauses, ties to
  // the lowest variable index; preferred value is the majority polarity.
  std::pair<int, int> pick_branch() {
    int shortest = INT32_MAX;
    for (int c = 0; c < n_clauses_; ++c)
      if (n_true_[static_cast<std::size_t>(c)] == 0 &&
          n_unassigned_[static_cast<std::size_t>(c)] < shortest)
        shortest = n_unassigned_[static_cast<std::size_t>(c)];

    auto& score = score_;
    score.assign(static_cast<std::size_t>(2 * n_vars_), 0);
    for (int c = 0; c < n_clauses_; ++c) {
      if (n_true_[static_cast<std::size_t>(c)] != 0 ||
          n_unassigned_[static_cast<std::size_t>(c)] != shortest)
        continue;
      for (auto i = clause_begin_[static_cast<std::size_t>(c)];
           i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i) {
        const auto el = lits_[static_cast<std::size_t>(i)];
        if (value_[static_cast<std::size_t>(el >> 1)] < 0) ++score[static_cast<std::size_t>(el)];
      }
    }
    int best_var = -1, best_score = -1;
    for (int v = 0; v < n_vars_; ++v) {
      if (value_[static_cast<std::size_t>(v)] >= 0) continue;
      const int s = score[static_cast<std::size_t>(2 * v)] + score[static_cast<std::size_t>(2 * v + 1)];
      if (s > best_score) {
        best_score = s;
        best_var = v;
      }
    }
    const int prefer =
        score[static_cast<std::size_t>(2 * best_var)] >= score[static_cast<std::size_t>(2 * best_var + 1)]
            ? 1
            : 0;
    return {best_var, prefer};
  }

  void search() {
    if (aborted_ || models_ >= 2) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (!propagate()) return;

    if (sat_clauses_ == n_clauses_) {
      int free_vars = 0;
      for (auto v : value_)
        if (v < 0) ++free_vars;
      record_model_block(free_vars);
      return;
    }
    // all variables assigned and no conflict implies all clauses satisfied,
    // so reaching here means at least one variable is free
    auto [var, prefer] = pick_branch();

    const std::size_t mark = trail_.size();
    if (assign(var, prefer)) search();
    backtrack_to(mark);
    if (aborted_ || models_ >= 2) return;
    if (assign(var, 1 - prefer)) search();
    backtrack_to(mark);
  }

  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  int n_vars_;
  int n_clauses_;
  int sat_clauses_ = 0;
  std::uint64_t models_ = 0;
  Assignment witness_[2];

  std::vector<std::int32_t> lits_;
  std::vector<std::int32_t> clause_begin_;
  std::vector<std::int32_t> occ_;
  std::vector<std::int32_t> occ_begin_;
  std::vector<std::int8_t> value_;
  std::vector<std::int32_t> n_unassigned_;
  std::vector<std::int32_t> n_true_;
  std::vector<int> trail_;
  std::vector<int> unit_queue_;
  std::vector<int> score_;
};

}  // namespace detail

// Complete solution counting capped at two models. Returns nullopt when the
// node budget runs out; the answer is never a wrong class.
inline std::optional<SolveOutcome> dpll_count_upto2(
    const CnfFormula& f, std::uint64_t node_budget = kDefaultDpllNodeBudget) {
  if (f.clauses.empty()) {
    // vacuously satisfied: 2^n_vars models
    SolveOutcome out;
    if (f.n_vars == 0) {
      out.count_class = CountClass::One;
      out.witness = Assignment{};
    } else {
      out.count_class = CountClass::TwoOrMore;
      Assignment a(static_cast<std::size_t>(f.n_vars), 0);
      out.witness = a;
      a[0] = 1;
      out.second_witness = a;
    }
    return out;
  }
  detail::DpllCounter counter(f, node_budget);
  return counter.run();
}

}  // namespace satbench
