#pragma once

#include <stdexcept>
#include <string>

namespace splogic {

/// Base class for all errors raised by the toolkit.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based source position.
struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : Error(msg + " (at line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

/// A predicate used with the wrong number of arguments, or a relation of the
/// wrong shape.
struct ArityError : Error {
  using Error::Error;
};

/// An undeclared, unbound, or clashing name.
struct NameError : Error {
  using Error::Error;
};

/// A fixpoint body in which the bound predicate occurs negatively.
struct PositivityError : Error {
  using Error::Error;
};

/// An enumeration exceeded its budget. Deliberately distinct from a truth
/// value: callers must never mistake a truncated search for `false`.
struct BudgetError : Error {
  using Error::Error;
};

/// An element or size outside the structure's universe.
struct DomainError : Error {
  using Error::Error;
};

/// A formula outside the fragment a translation accepts.
struct TranslateError : Error {
  using Error::Error;
};

}  // namespace splogic
