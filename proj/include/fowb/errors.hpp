#pragma once

#include <stdexcept>
#include <string>

namespace fowb {

// Position-carrying error for text inputs (formulas, machine files,
// structure files). Line and column are 1-based.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line, int column, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
};

struct SyntaxError : ParseError {
  using ParseError::ParseError;
};

struct ArityError : ParseError {
  using ParseError::ParseError;
};

struct UnknownSymbolError : ParseError {
  using ParseError::ParseError;
};

struct VocabularyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a computation exceeds a configured cap (determinization state
// cap, solver conflict budget, decomposition bound).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fowb
