#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arrival {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text rejected; line numbers are 1-based.
struct ParseError : Error {
  ParseError(std::size_t line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  std::size_t line;
};

// Raised when a vector is not a flow from the origin to any single vertex.
struct NotAFlowError : Error {
  using Error::Error;
};

// Raised when an operation requires a (partial) run profile and the input
// is not one.
struct NotARunProfileError : Error {
  using Error::Error;
};

// Raised when asking for the previous position of a zero-step run.
struct EmptyRunError : Error {
  using Error::Error;
};

// The decode system has no unique solution. On switch graphs this signals
// an instance where neither sink is reachable from some vertex.
struct SingularSystemError : Error {
  using Error::Error;
};

// A walk or solve exceeded its evaluation budget.
struct BudgetExhaustedError : Error {
  using Error::Error;
};

}  // namespace arrival
