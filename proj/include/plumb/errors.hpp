#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plumb {

/// Malformed or invalid graph input. Line/column are 1-based; 0 means unknown.
class GraphError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DuplicateVertex, UnknownEndpoint, SelfLoop, DuplicateEdge, Cycle };

  GraphError(Kind kind, const std::string& what, std::size_t line = 0, std::size_t column = 0);

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// An enumeration or search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an algorithm entry point does not hold (e.g. the form is
/// not negative definite, or two vectors live in different Spin^c classes).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No relation path between two vectors was found inside the expanded box.
class BoundExceeded : public std::runtime_error {
 public:
  explicit BoundExceeded(long long expansion);
  long long expansion() const noexcept { return expansion_; }

 private:
  long long expansion_;
};

/// The degree window did not reach the tower (top-of-window count != 1).
class Unconverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plumb
