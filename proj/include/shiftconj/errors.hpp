#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftconj {

// Raised when an operation's precondition is violated or input data is
// malformed. The CLI maps this family to exit code 1.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InvalidInput(std::to_string(line) + ":" + std::to_string(column) +
                     ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A configured search or completion limit was reached before an answer was
// found. The CLI maps this to exit code 2.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(std::string limit, const std::string& message)
      : std::runtime_error(message), limit_(std::move(limit)) {}

  const std::string& limit() const { return limit_; }

 private:
  std::string limit_;
};

}  // namespace shiftconj
