#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "satbench/error.hpp"

namespace satbench {

// The five model families, all at their satisfiability thresholds.
enum class ModelFamily {
  Unlocked1In3,   // Exact Cover; (N, M) pairs from the published table
  Locked1In3,     // M = round(0.789 N), min degree 2
  Locked2In4,     // M = round(0.707 N), min degree 2, arity 4
  Xorsat3Reg,     // M = N, every variable in exactly 3 clauses
  XorsatPoisson,  // M = N, truncated-Poisson degrees with mean 3
};

enum class ClauseKind : std::uint8_t {
  Exactly1Of3,
  Exactly2Of4,
  XorParity,
};

using Assignment = std::vector<std::uint8_t>;  // one 0/1 per variable

constexpr double kAlphaLocked1In3 = 0.789;
constexpr double kAlphaLocked2In4 = 0.707;

// Published Exact Cover sizes: (N, M) chosen to maximize P(unique solution).
struct ExactCoverSize {
  int n_vars;
  int n_clauses;
};
inline constexpr std::array<ExactCoverSize, 6> kExactCoverTable = {{
    {16, 12}, {32, 23}, {64, 44}, {128, 86}, {192, 126}, {256, 166},
}};

inline constexpr std::string_view family_name(ModelFamily family) {
  switch (family) {
    case ModelFamily::Unlocked1In3: return "unlocked-1in3";
    case ModelFamily::Locked1In3: return "locked-1in3";
    case ModelFamily::Locked2In4: return "locked-2in4";
    case ModelFamily::Xorsat3Reg: return "xorsat-3reg";
    case ModelFamily::XorsatPoisson: return "xorsat-poisson";
  }
  return "unknown";
}

inline ModelFamily parse_family(std::string_view name) {
  for (ModelFamily f : {ModelFamily::Unlocked1In3, ModelFamily::Locked1In3,
                        ModelFamily::Locked2In4, ModelFamily::Xorsat3Reg,
                        ModelFamily::XorsatPoisson}) {
    if (family_name(f) == name) return f;
  }
  throw InvalidArgument("unknown model family: " + std::string(name));
}

inline constexpr bool is_xorsat(ModelFamily family) {
  return family == ModelFamily::Xorsat3Reg || family == ModelFamily::XorsatPoisson;
}

inline constexpr bool is_locked(ModelFamily family) {
  return family == ModelFamily::Locked1In3 || family == ModelFamily::Locked2In4;
}

inline constexpr int clause_arity(ModelFamily family) {
  return family == ModelFamily::Locked2In4 ? 4 : 3;
}

inline constexpr ClauseKind clause_kind(ModelFamily family) {
  switch (family) {
    case ModelFamily::Locked2In4: return ClauseKind::Exactly2Of4;
    case ModelFamily::Xorsat3Reg:
    case ModelFamily::XorsatPoisson: return ClauseKind::XorParity;
    default: return ClauseKind::Exactly1Of3;
  }
}

inline constexpr int round_half_up(double x) { return static_cast<int>(x + 0.5); }

// Clause count rule per family; for Exact Cover the published table, with
// piecewise-linear interpolation of the clause density for off-table sizes
// (those specs are flagged non-canonical).
inline int threshold_clause_count(ModelFamily family, int n_vars) {
  switch (family) {
    case ModelFamily::Locked1In3:
      return round_half_up(kAlphaLocked1In3 * n_vars);
    case ModelFamily::Locked2In4:
      return round_half_up(kAlphaLocked2In4 * n_vars);
    case ModelFamily::Xorsat3Reg:
    case ModelFamily::XorsatPoisson:
      return n_vars;
    case ModelFamily::Unlocked1In3: {
      for (const auto& row : kExactCoverTable)
        if (row.n_vars == n_vars) return row.n_clauses;
      const auto& first = kExactCoverTable.front();
      const auto& last = kExactCoverTable.back();
      auto alpha = [](const ExactCoverSize& r) {
        return static_cast<double>(r.n_clauses) / r.n_vars;
      };
      double a;
      if (n_vars <= first.n_vars) {
        a = alpha(first);
      } else if (n_vars >= last.n_vars) {
        a = alpha(last);
      } else {
        a = alpha(first);
        for (std::size_t i = 0; i + 1 < kExactCoverTable.size(); ++i) {
          const auto& lo = kExactCoverTable[i];
          const auto& hi = kExactCoverTable[i + 1];
          if (n_vars >= lo.n_vars && n_vars <= hi.n_vars) {
            double t = static_cast<double>(n_vars - lo.n_vars) / (hi.n_vars - lo.n_vars);
            a = alpha(lo) + t * (alpha(hi) - alpha(lo));
            break;
          }
        }
      }
      return round_half_up(a * n_vars);
    }
  }
  throw InvalidArgument("unknown model family");
}

// Which of the five families to generate, and at what size.
struct ModelSpec {
  ModelFamily family;
  int n_vars = 0;
  int n_clauses = 0;
  bool canonical = true;  // M follows the family's published rule at this N

  int arity() const { return clause_arity(family); }

  static ModelSpec at_threshold(ModelFamily family, int n_vars) {
    if (n_vars <= 0) throw InvalidArgument("n_vars must be positive");
    ModelSpec spec{family, n_vars, threshold_clause_count(family, n_vars), true};
    if (family == ModelFamily::Unlocked1In3) {
      spec.canonical = false;
      for (const auto& row : kExactCoverTable)
        if (row.n_vars == n_vars) spec.canonical = true;
    }
    return spec;
  }

  static ModelSpec custom(ModelFamily family, int n_vars, int n_clauses) {
    if (n_vars <= 0 || n_clauses <= 0)
      throw InvalidArgument("n_vars and n_clauses must be positive");
    ModelSpec spec{family, n_vars, n_clauses, false};
    spec.canonical = (n_clauses == threshold_clause_count(family, n_vars));
    if (family == ModelFamily::Unlocked1In3 && spec.canonical) {
      spec.canonical = false;
      for (const auto& row : kExactCoverTable)
        if (row.n_vars == n_vars) spec.canonical = true;
    }
    return spec;
  }
};

// One occupation or parity constraint over `arity` distinct variables.
struct NativeClause {
  std::array<std::int32_t, 4> vars{};
  std::uint8_t arity = 0;
  ClauseKind kind = ClauseKind::Exactly1Of3;
  std::uint8_t parity = 0;  // XorParity only: required sum mod 2

  std::int32_t* begin() { return vars.data(); }
  std::int32_t* end() { return vars.data() + arity; }
  const std::int32_t* begin() const { return vars.data(); }
  const std::int32_t* end() const { return vars.data() + arity; }

  bool satisfied_by(const Assignment& a) const {
    int sum = 0;
    for (int i = 0; i < arity; ++i) sum += a[static_cast<std::size_t>(vars[i])];
    switch (kind) {
      case ClauseKind::Exactly1Of3: return sum == 1;
      case ClauseKind::Exactly2Of4: return sum == 2;
      case ClauseKind::XorParity: return (sum & 1) == parity;
    }
    return false;
  }
};

inline NativeClause make_clause(ClauseKind kind, std::initializer_list<std::int32_t> vars,
                                std::uint8_t parity = 0) {
  NativeClause c;
  c.kind = kind;
  c.parity = parity;
  c.arity = static_cast<std::uint8_t>(vars.size());
  int i = 0;
  for (auto v : vars) c.vars[static_cast<std::size_t>(i++)] = v;
  return c;
}

// A native (pre-CNF) constraint instance.
struct Instance {
  int n_vars = 0;
  ModelFamily family = ModelFamily::Unlocked1In3;
  std::vector<NativeClause> clauses;
  std::optional<Assignment> known_solution;

  bool satisfied_by(const Assignment& a) const {
    for (const auto& c : clauses)
      if (!c.satisfied_by(a)) return false;
    return true;
  }
};

}  // namespace satbench
