#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "satbench/cnf.hpp"
#include "satbench/error.hpp"

namespace satbench {

// Standard DIMACS CNF. Variables are 1-based and signed on disk, 0-based
// internally; the conversion happens here and nowhere else.

inline void write_dimacs(std::ostream& out, const CnfFormula& f,
                         bool with_comments = false) {
  if (with_comments)
    for (const auto& c : f.comments) out << "c " << c << '\n';
  out << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (const auto& lit : clause) out << (lit.neg ? -(lit.var + 1) : lit.var + 1) << ' ';
    out << "0\n";
  }
}

inline std::string to_dimacs_string(const CnfFormula& f, bool with_comments = false) {
  std::ostringstream os;
  write_dimacs(os, f, with_comments);
  return os.str();
}

inline CnfFormula parse_dimacs(std::istream& in, bool keep_comments = false) {
  CnfFormula f;
  std::string line;
  bool have_header = false;
  long declared_clauses = 0;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == 'c') {
      if (keep_comments) {
        std::string body = line.substr(1);
        if (!body.empty() && body[0] == ' ') body.erase(0, 1);
        f.comments.push_back(body);
      }
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, fmt;
      if (!(hs >> p >> fmt >> f.n_vars >> declared_clauses) || fmt != "cnf" ||
          f.n_vars < 0 || declared_clauses < 0)
        throw ParseError("malformed DIMACS header: " + line);
      have_header = true;
      break;
    }
    throw ParseError("expected DIMACS header, got: " + line);
  }
  if (!have_header) throw ParseError("missing DIMACS header");

  CnfClause current;
  long completed = 0;
  int lit = 0;
  for (;;) {
    if (!(in >> lit)) {
      // tolerate comment lines between clauses
      in.clear();
      char ch = 0;
      if (!(in >> ch)) break;
      if (ch != 'c') throw ParseError("unexpected token in DIMACS body");
      std::getline(in, line);
      continue;
    }
    if (lit == 0) {
      f.clauses.push_back(current);
      current.clear();
      ++completed;
      continue;
    }
    const int v = (lit > 0 ? lit : -lit) - 1;
    if (v >= f.n_vars)
      throw ParseError("literal " + std::to_string(lit) + " out of range for " +
                       std::to_string(f.n_vars) + " variables");
    current.push_back({v, lit < 0});
  }
  if (!current.empty()) throw ParseError("unterminated clause at end of file");
  if (completed != declared_clauses)
    throw ParseError("clause count mismatch: header says " +
                     std::to_string(declared_clauses) + ", found " +
                     std::to_string(completed));
  return f;
}

inline CnfFormula parse_dimacs_string(const std::string& text, bool keep_comments = false) {
  std::istringstream is(text);
  return parse_dimacs(is, keep_comments);
}

}  // namespace satbench
