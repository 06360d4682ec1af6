#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satbench/cnf.hpp"
#include "satbench/error.hpp"
#include "satbench/rng.hpp"

namespace satbench {

struct WalkSatParams {
  double noise = 0.5;                         // probability of the random walk move
  std::uint64_t max_flips = 100'000'000ull;   // per try
  std::uint64_t max_tries = UINT64_MAX;       // restarts
  std::uint64_t max_total_flips = 10'000'000'000ull;  // global budget over all tries
  std::uint64_t seed = 0;

  void validate() const {
    if (noise < 0.0 || noise > 1.0) throw InvalidArgument("noise must be in [0,1]");
    if (max_flips == 0) throw InvalidArgument("max_flips must be >= 1");
    if (max_tries == 0) throw InvalidArgument("max_tries must be >= 1");
  }
};

struct RunRecord {
  std::string instance_id;
  double noise = 0.5;
  std::optional<std::uint64_t> flips;  // cumulative over all tries; nullopt = not found
  std::uint64_t tries = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;           // diagnostic only, never serialized
  std::optional<Assignment> assignment;

  bool solved() const { return flips.has_value(); }
};

// WalkSAT (SKC variant) with incrementally maintained break counts.
//
// Per flip: pick an unsatisfied clause uniformly at random; if any of its
// variables has break count zero, flip one of those ("freebie"); otherwise
// with probability `noise` flip a random variable of the clause, else a
// minimum-break variable, ties broken uniformly.
class WalkSatEngine {
public:
  explicit WalkSatEngine(const CnfFormula& f) : n_vars_(f.n_vars) {
    if (f.clauses.empty()) throw InvalidArgument("WalkSAT requires a non-empty formula");
    n_clauses_ = static_cast<std::int32_t>(f.clauses.size());
    clause_begin_.reserve(f.clauses.size() + 1);
    clause_begin_.push_back(0);
    for (const auto& clause : f.clauses) {
      if (clause.empty()) throw InvalidArgument("empty clause in formula");
      if (clause.size() > static_cast<std::size_t>(kMaxClauseWidth))
        throw InvalidArgument("clause wider than supported maximum");
      for (std::size_t i = 0; i < clause.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
          if (clause[i].var == clause[j].var)
            throw InvalidArgument("repeated variable within a clause");
        lits_.push_back(2 * clause[i].var + (clause[i].neg ? 1 : 0));
      }
      clause_begin_.push_back(static_cast<std::int32_t>(lits_.size()));
    }
    occ_begin_.assign(static_cast<std::size_t>(2 * n_vars_) + 1, 0);
    for (auto el : lits_) ++occ_begin_[static_cast<std::size_t>(el) + 1];
    for (std::size_t i = 1; i < occ_begin_.size(); ++i) occ_begin_[i] += occ_begin_[i - 1];
    occ_.resize(lits_.size());
    std::vector<std::int32_t> cursor(occ_begin_.begin(), occ_begin_.end() - 1);
    for (std::int32_t c = 0; c < n_clauses_; ++c)
      for (auto i = clause_begin_[static_cast<std::size_t>(c)];
           i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i)
        occ_[static_cast<std::size_t>(
            cursor[static_cast<std::size_t>(lits_[static_cast<std::size_t>(i)])]++)] = c;

    value_.assign(static_cast<std::size_t>(n_vars_), 0);
    n_true_.assign(static_cast<std::size_t>(n_clauses_), 0);
    crit_var_.assign(static_cast<std::size_t>(n_clauses_), -1);
    break_count_.assign(static_cast<std::size_t>(n_vars_), 0);
    unsat_pos_.assign(static_cast<std::size_t>(n_clauses_), -1);
    unsat_.reserve(static_cast<std::size_t>(n_clauses_));
  }

  int n_vars() const { return n_vars_; }
  std::int32_t n_clauses() const { return n_clauses_; }
  std::size_t num_unsat() const { return unsat_.size(); }
  const std::vector<std::uint8_t>& assignment() const { return value_; }
  int break_count(int var) const { return break_count_[static_cast<std::size_t>(var)]; }

  void init_assignment(const Assignment& a) {
    value_ = a;
    rebuild_state();
  }

  void init_random(Rng& rng) {
    for (auto& v : value_) v = static_cast<std::uint8_t>(rng.next_u64() & 1u);
    rebuild_state();
  }

  // One WalkSAT flip. Precondition: num_unsat() > 0.
  void step(double noise, Rng& rng) {
    const std::int32_t c =
        unsat_[static_cast<std::size_t>(rng.next_below(unsat_.size()))];
    const auto begin = clause_begin_[static_cast<std::size_t>(c)];
    const auto end = clause_begin_[static_cast<std::size_t>(c) + 1];

    int best_break = INT32_MAX;
    int n_best = 0;
    std::int32_t best[kMaxClauseWidth];
    for (auto i = begin; i < end; ++i) {
      const std::int32_t v = lits_[static_cast<std::size_t>(i)] >> 1;
      const int b = break_count_[static_cast<std::size_t>(v)];
      if (b < best_break) {
        best_break = b;
        n_best = 0;
      }
      if (b == best_break) best[n_best++] = v;
    }

    std::int32_t var;
    if (best_break > 0 && rng.next_double() < noise) {
      const auto i = begin + static_cast<std::int32_t>(rng.next_below(
                                 static_cast<std::uint64_t>(end - begin)));
      var = lits_[static_cast<std::size_t>(i)] >> 1;
    } else {
      var = n_best == 1 ? best[0]
                        : best[rng.next_below(static_cast<std::uint64_t>(n_best))];
    }
    flip(var);
  }

  // Recomputes true-literal counts, the unsatisfied set and break counts
  // from the current assignment and cross-checks them against the
  // incrementally maintained state. Test hook.
  bool check_consistency() const {
    std::vector<std::int32_t> n_true(static_cast<std::size_t>(n_clauses_), 0);
    std::vector<std::int32_t> breaks(static_cast<std::size_t>(n_vars_), 0);
    std::vector<char> unsat(static_cast<std::size_t>(n_clauses_), 0);
    for (std::int32_t c = 0; c < n_clauses_; ++c) {
      std::int32_t crit = -1;
      for (auto i = clause_begin_[static_cast<std::size_t>(c)];
           i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i) {
        const auto el = lits_[static_cast<std::size_t>(i)];
        if (lit_true(el)) {
          ++n_true[static_cast<std::size_t>(c)];
          crit = el >> 1;
        }
      }
      if (n_true[static_cast<std::size_t>(c)] == 0) unsat[static_cast<std::size_t>(c)] = 1;
      if (n_true[static_cast<std::size_t>(c)] == 1) ++breaks[static_cast<std::size_t>(crit)];
    }
    for (std::int32_t c = 0; c < n_clauses_; ++c) {
      if (n_true[static_cast<std::size_t>(c)] != n_true_[static_cast<std::size_t>(c)]) return false;
      const bool in_set = unsat_pos_[static_cast<std::size_t>(c)] >= 0;
      if (in_set != (unsat[static_cast<std::size_t>(c)] != 0)) return false;
    }
    for (std::int32_t v = 0; v < n_vars_; ++v)
      if (breaks[static_cast<std::size_t>(v)] != break_count_[static_cast<std::size_t>(v)])
        return false;
    for (std::size_t p = 0; p < unsat_.size(); ++p)
      if (unsat_pos_[static_cast<std::size_t>(unsat_[p])] != static_cast<std::int32_t>(p))
        return false;
    return true;
  }

  // Break count computed by trial flip from scratch. Test hook.
  int break_count_slow(int var) const {
    int breaks = 0;
    for (std::int32_t c = 0; c < n_clauses_; ++c) {
      int before = 0, after = 0;
      for (auto i = clause_begin_[static_cast<std::size_t>(c)];
           i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i) {
        const auto el = lits_[static_cast<std::size_t>(i)];
        const std::int32_t v = el >> 1;
        const bool now = lit_true(el);
        before += now;
        after += (v == var) ? !now : now;
      }
      if (before > 0 && after == 0) ++breaks;
    }
    return breaks;
  }

  bool formula_satisfied() const {
    for (std::int32_t c = 0; c < n_clauses_; ++c) {
      bool sat = false;
      for (auto i = clause_begin_[static_cast<std::size_t>(c)];
           i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i)
        if (lit_true(lits_[static_cast<std::size_t>(i)])) {
          sat = true;
          break;
        }
      if (!sat) return false;
    }
    return true;
  }

  RunRecord run(const WalkSatParams& params, Rng& rng, std::string instance_id = "") {
    params.validate();
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.instance_id = std::move(instance_id);
    rec.noise = params.noise;
    rec.seed = params.seed;

    std::uint64_t total_flips = 0;
    for (std::uint64_t t = 0; t < params.max_tries; ++t) {
      rec.tries = t + 1;
      init_random(rng);
      std::uint64_t flips_this_try = 0;
      while (!unsat_.empty() && flips_this_try < params.max_flips &&
             total_flips < params.max_total_flips) {
        step(params.noise, rng);
        ++flips_this_try;
        ++total_flips;
      }
      if (unsat_.empty()) {
        if (!formula_satisfied())
          throw Error("internal inconsistency: empty unsat set on unsatisfied formula");
        rec.flips = total_flips;
        rec.assignment = value_;
        break;
      }
      if (total_flips >= params.max_total_flips) break;
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
  }

private:
  static constexpr int kMaxClauseWidth = 64;

  bool lit_true(std::int32_t el) const {
    return value_[static_cast<std::size_t>(el >> 1)] == ((el & 1) ^ 1);
  }

  void push_unsat(std::int32_t c) {
    unsat_pos_[static_cast<std::size_t>(c)] = static_cast<std::int32_t>(unsat_.size());
    unsat_.push_back(c);
  }

  void remove_unsat(std::int32_t c) {
    const std::int32_t p = unsat_pos_[static_cast<std::size_t>(c)];
    const std::int32_t last = unsat_.back();
    unsat_[static_cast<std::size_t>(p)] = last;
    unsat_pos_[static_cast<std::size_t>(last)] = p;
    unsat_.pop_back();
    unsat_pos_[static_cast<std::size_t>(c)] = -1;
  }

  void rebuild_state() {
    unsat_.clear();
    std::fill(n_true_.begin(), n_true_.end(), 0);
    std::fill(break_count_.begin(), break_count_.end(), 0);
    std::fill(crit_var_.begin(), crit_var_.end(), -1);
    std::fill(unsat_pos_.begin(), unsat_pos_.end(), -1);
    for (std::int32_t c = 0; c < n_clauses_; ++c) {
      std::int32_t crit = -1;
      std::int32_t count = 0;
      for (auto i = clause_begin_[static_cast<std::size_t>(c)];
           i < clause_begin_[static_cast<std::size_t>(c) + 1]; ++i) {
        const auto el = lits_[static_cast<std::size_t>(i)];
        if (lit_true(el)) {
          ++count;
          crit = el >> 1;
        }
      }
      n_true_[static_cast<std::size_t>(c)] = count;
      if (count == 0) {
        push_unsat(c);
      } else if (count == 1) {
        crit_var_[static_cast<std::size_t>(c)] = crit;
        ++break_count_[static_cast<std::size_t>(crit)];
      }
    }
  }

  void flip(std::int32_t var) {
    const std::uint8_t new_val = value_[static_cast<std::size_t>(var)] ^ 1u;
    value_[static_cast<std::size_t>(var)] = new_val;
    const std::int32_t now_true = 2 * var + (new_val ? 0 : 1);
    const std::int32_t now_false = now_true ^ 1;

    // clauses gaining a true literal
    for (auto i = occ_begin_[static_cast<std::size_t>(now_true)];
         i < occ_begin_[static_cast<std::size_t>(now_true) + 1]; ++i) {
      const std::int32_t c = occ_[static_cast<std::size_t>(i)];
      const std::int32_t k = ++n_true_[static_cast<std::size_t>(c)];
      if (k == 1) {
        remove_unsat(c);
        crit_var_[static_cast<std::size_t>(c)] = var;
        ++break_count_[static_cast<std::size_t>(var)];
      } else if (k == 2) {
        --break_count_[static_cast<std::size_t>(crit_var_[static_cast<std::size_t>(c)])];
      }
    }
    // clauses losing a true literal
    for (auto i = occ_begin_[static_cast<std::size_t>(now_false)];
         i < occ_begin_[static_cast<std::size_t>(now_false) + 1]; ++i) {
      const std::int32_t c = occ_[static_cast<std::size_t>(i)];
      const std::int32_t k = --n_true_[static_cast<std::size_t>(c)];
      if (k == 0) {
        push_unsat(c);
        --break_count_[static_cast<std::size_t>(var)];
      } else if (k == 1) {
        // find the remaining true literal
        for (auto j = clause_begin_[static_cast<std::size_t>(c)];
             j < clause_begin_[static_cast<std::size_t>(c) + 1]; ++j) {
          const auto el = lits_[static_cast<std::size_t>(j)];
          if (lit_true(el)) {
            const std::int32_t w = el >> 1;
            crit_var_[static_cast<std::size_t>(c)] = w;
            ++break_count_[static_cast<std::size_t>(w)];
            break;
          }
        }
      }
    }
  }

  std::int32_t n_vars_;
  std::int32_t n_clauses_ = 0;
  std::vector<std::int32_t> lits_;          // encoded (var<<1)|neg, CSR
  std::vector<std::int32_t> clause_begin_;
  std::vector<std::int32_t> occ_;           // clause indices per literal, CSR
  std::vector<std::int32_t> occ_begin_;

  std::vector<std::uint8_t> value_;
  std::vector<std::int32_t> n_true_;
  std::vector<std::int32_t> crit_var_;      // valid while n_true == 1
  std::vector<std::int32_t> break_count_;
  std::vector<std::int32_t> unsat_;
  std::vector<std::int32_t> unsat_pos_;     // -1 when satisfied
};

// One WalkSAT run on a fresh engine, seeded from params.seed.
inline RunRecord walksat_run(const CnfFormula& formula, const WalkSatParams& params,
                             std::string instance_id = "") {
  WalkSatEngine engine(formula);
  Rng rng(params.seed);
  return engine.run(params, rng, std::move(instance_id));
}

}  // namespace satbench
