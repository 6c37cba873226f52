#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advlearn {

/// Malformed caller input: foreign symbols, alphabet mismatches, bad arguments.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A text file could not be parsed. Carries a 1-based line/column.
class parse_error : public input_error {
 public:
  parse_error(std::size_t line, std::size_t column, const std::string& message)
      : input_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Rewriting ran past its step budget.
class non_termination_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Advice cannot be used: non-convergent system, unsupported rule shape,
/// or a normal form that could not be computed.
class advice_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The learner stopped making progress (round limit, bogus counterexample).
/// Usually means the advice is not consistent with the target.
class divergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition.
class contract_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace advlearn
