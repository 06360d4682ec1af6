#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satbench/error.hpp"
#include "satbench/instance.hpp"

namespace satbench {

// A literal: variable index plus polarity.
struct Lit {
  std::int32_t var = 0;
  bool neg = false;

  friend bool operator==(const Lit&, const Lit&) = default;
  bool satisfied_by(const Assignment& a) const {
    return a[static_cast<std::size_t>(var)] != static_cast<std::uint8_t>(neg);
  }
};

inline Lit pos(std::int32_t v) { return {v, false}; }
inline Lit neg(std::int32_t v) { return {v, true}; }

using CnfClause = std::vector<Lit>;

struct CnfFormula {
  int n_vars = 0;
  std::vector<CnfClause> clauses;
  std::optional<Instance> origin;          // source instance, when encoded
  std::vector<std::string> comments;       // DIMACS comments, when preserved

  bool satisfied_by(const Assignment& a) const {
    for (const auto& clause : clauses) {
      bool sat = false;
      for (const auto& lit : clause)
        if (lit.satisfied_by(a)) {
          sat = true;
          break;
        }
      if (!sat) return false;
    }
    return true;
  }

  friend bool operator==(const CnfFormula& x, const CnfFormula& y) {
    return x.n_vars == y.n_vars && x.clauses == y.clauses;
  }
};

// 1-in-3 occupation constraint as 4 CNF clauses; the two-literal clause
// replaces a pair from the naive 5-clause form. Exactly the 3 weight-1
// assignments over (x1,x2,x3) survive.
inline void encode_1in3(const NativeClause& c, std::vector<CnfClause>& out) {
  if (c.kind != ClauseKind::Exactly1Of3) throw InvalidArgument("clause kind is not 1-in-3");
  const auto x1 = c.vars[0], x2 = c.vars[1], x3 = c.vars[2];
  out.push_back({pos(x1), pos(x2), pos(x3)});
  out.push_back({neg(x1), neg(x2)});
  out.push_back({pos(x1), neg(x2), neg(x3)});
  out.push_back({neg(x1), pos(x2), neg(x3)});
}

// 2-in-4: for each variable triple, one all-positive and one all-negative
// clause. 8 clauses versus the naive 10; exactly the 6 weight-2
// assignments survive.
inline void encode_2in4(const NativeClause& c, std::vector<CnfClause>& out) {
  if (c.kind != ClauseKind::Exactly2Of4) throw InvalidArgument("clause kind is not 2-in-4");
  for (int skip = 3; skip >= 0; --skip) {
    std::int32_t t[3];
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) t[k++] = c.vars[static_cast<std::size_t>(i)];
    out.push_back({pos(t[0]), pos(t[1]), pos(t[2])});
    out.push_back({neg(t[0]), neg(t[1]), neg(t[2])});
  }
}

// 3-XOR with required parity p: 4 width-3 clauses, each forbidding one of
// the wrong-parity assignments.
inline void encode_xor3(const NativeClause& c, std::vector<CnfClause>& out) {
  if (c.kind != ClauseKind::XorParity) throw InvalidArgument("clause kind is not XOR");
  for (int a = 0; a < 8; ++a) {
    const int bits[3] = {a & 1, (a >> 1) & 1, (a >> 2) & 1};
    if (((bits[0] + bits[1] + bits[2]) & 1) == c.parity) continue;  // allowed
    CnfClause clause;
    for (int i = 0; i < 3; ++i)
      clause.push_back({c.vars[static_cast<std::size_t>(i)], bits[i] == 1});
    out.push_back(std::move(clause));
  }
}

inline std::vector<CnfClause> encode_clause(const NativeClause& c) {
  std::vector<CnfClause> out;
  switch (c.kind) {
    case ClauseKind::Exactly1Of3: encode_1in3(c, out); break;
    case ClauseKind::Exactly2Of4: encode_2in4(c, out); break;
    case ClauseKind::XorParity: encode_xor3(c, out); break;
  }
  return out;
}

// Concatenated per-clause encodings: 4 CNF clauses per 1-in-3 or XOR
// clause, 8 per 2-in-4. Satisfying assignments match the native instance.
inline CnfFormula encode_instance(const Instance& inst) {
  CnfFormula f;
  f.n_vars = inst.n_vars;
  f.clauses.reserve(inst.clauses.size() * 4);
  for (const auto& c : inst.clauses) {
    switch (c.kind) {
      case ClauseKind::Exactly1Of3: encode_1in3(c, f.clauses); break;
      case ClauseKind::Exactly2Of4: encode_2in4(c, f.clauses); break;
      case ClauseKind::XorParity: encode_xor3(c, f.clauses); break;
    }
  }
  f.origin = inst;
  return f;
}

}  // namespace satbench
