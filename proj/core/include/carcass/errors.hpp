#pragma once

#include <stdexcept>
#include <string>

namespace carcass {

// Malformed input file. `line` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Well-formed input, unanswerable request (not separated, instance too large, ...).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural guarantee failed to hold. Always a bug, never a user error.
class InvariantBreach : public std::runtime_error {
 public:
  explicit InvariantBreach(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace carcass
