#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "satbench/error.hpp"
#include "satbench/instance.hpp"

namespace satbench {

// Line-oriented native instance format:
//   p native <family> <n_vars> <n_clauses>
//   c <kind> <var...> [parity]        (one per clause, 0-based variables)
//   s <bitstring>                     (optional known solution)
// Round-trips bit-exactly.

inline constexpr std::string_view kind_token(ClauseKind kind) {
  switch (kind) {
    case ClauseKind::Exactly1Of3: return "1in3";
    case ClauseKind::Exactly2Of4: return "2in4";
    case ClauseKind::XorParity: return "xor";
  }
  return "?";
}

inline void write_native(std::ostream& out, const Instance& inst) {
  out << "p native " << family_name(inst.family) << ' ' << inst.n_vars << ' '
      << inst.clauses.size() << '\n';
  for (const auto& c : inst.clauses) {
    out << "c " << kind_token(c.kind);
    for (auto v : c) out << ' ' << v;
    if (c.kind == ClauseKind::XorParity) out << ' ' << static_cast<int>(c.parity);
    out << '\n';
  }
  if (inst.known_solution) {
    out << "s ";
    for (auto b : *inst.known_solution) out << (b ? '1' : '0');
    out << '\n';
  }
}

inline std::string to_native_string(const Instance& inst) {
  std::ostringstream os;
  write_native(os, inst);
  return os.str();
}

// Reads one instance. Returns false on clean end-of-stream before a header.
inline bool read_native(std::istream& in, Instance& inst) {
  std::string line;
  // skip blank lines between instances
  while (std::getline(in, line)) {
    if (!line.empty()) break;
  }
  if (in.fail() && line.empty()) return false;
  if (line.empty()) return false;

  std::istringstream header(line);
  std::string p, magic, family;
  int n_vars = 0;
  long n_clauses = 0;
  if (!(header >> p >> magic >> family >> n_vars >> n_clauses) || p != "p" ||
      magic != "native")
    throw ParseError("bad native header: " + line);
  if (n_vars < 0 || n_clauses < 0) throw ParseError("negative counts in header");

  inst = Instance{};
  inst.family = parse_family(family);
  inst.n_vars = n_vars;
  inst.clauses.reserve(static_cast<std::size_t>(n_clauses));

  for (long i = 0; i < n_clauses; ++i) {
    if (!std::getline(in, line)) throw ParseError("unexpected end of file in clause list");
    std::istringstream ls(line);
    std::string tag, kind;
    if (!(ls >> tag >> kind) || tag != "c")
      throw ParseError("expected clause line, got: " + line);
    NativeClause c;
    int arity;
    if (kind == "1in3") {
      c.kind = ClauseKind::Exactly1Of3;
      arity = 3;
    } else if (kind == "2in4") {
      c.kind = ClauseKind::Exactly2Of4;
      arity = 4;
    } else if (kind == "xor") {
      c.kind = ClauseKind::XorParity;
      arity = 3;
    } else {
      throw ParseError("unknown clause kind: " + kind);
    }
    c.arity = static_cast<std::uint8_t>(arity);
    for (int k = 0; k < arity; ++k) {
      std::int32_t v;
      if (!(ls >> v)) throw ParseError("short clause line: " + line);
      if (v < 0 || v >= n_vars) throw ParseError("variable out of range: " + line);
      c.vars[static_cast<std::size_t>(k)] = v;
    }
    if (c.kind == ClauseKind::XorParity) {
      int parity;
      if (!(ls >> parity) || (parity != 0 && parity != 1))
        throw ParseError("missing or bad parity: " + line);
      c.parity = static_cast<std::uint8_t>(parity);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing tokens on clause line: " + line);
    inst.clauses.push_back(c);
  }

  // optional solution line; peek for 's '
  std::streampos pos = in.tellg();
  if (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      std::string bits = line.substr(2);
      if (static_cast<int>(bits.size()) != n_vars)
        throw ParseError("solution length does not match n_vars");
      Assignment sol(static_cast<std::size_t>(n_vars));
      for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] != '0' && bits[k] != '1') throw ParseError("bad solution bit");
        sol[k] = bits[k] == '1';
      }
      inst.known_solution = std::move(sol);
    } else {
      in.clear();
      in.seekg(pos);
    }
  } else {
    in.clear();
  }
  return true;
}

inline Instance parse_native_string(const std::string& text) {
  std::istringstream is(text);
  Instance inst;
  if (!read_native(is, inst)) throw ParseError("empty native instance text");
  return inst;
}

}  // namespace satbench
