#pragma once

#include <stdexcept>
#include <string>

namespace satbench {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid parameters or preconditions (wrong clause kind, infeasible degree
// sum, out-of-range literal, ...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// A rejection-sampling or node budget ran out. Signals pathological
// parameters, never silent truncation.
class BudgetExhausted : public Error {
public:
  using Error::Error;
};

// Malformed input file (native or DIMACS).
class ParseError : public Error {
public:
  using Error::Error;
};

// Filesystem failure.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace satbench
