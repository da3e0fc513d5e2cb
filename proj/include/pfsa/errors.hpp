#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfsa {

// A symbol was observed whose reveal set carries no mass under the current
// belief. f(0) is undefined, so this is reported instead of renormalized.
class ImpossibleObservation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The environment reached a state from which no symbol satisfies the
// consistency constraint.
class DeadEnd : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An unnormalized message has zero l1 mass and cannot be decoded.
class MassUnderflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sinkhorn projection requires every row and column to carry mass.
class NoSupport : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace pfsa
