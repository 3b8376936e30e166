#pragma once

#include <stdexcept>
#include <string>

namespace pcg {

// Malformed input text. position is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, std::size_t position = 0, std::size_t line = 0)
      : std::runtime_error(format(msg, position, line)), position_(position), line_(line) {}
  std::size_t position() const { return position_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& msg, std::size_t pos, std::size_t line) {
    std::string out;
    if (line) out += "line " + std::to_string(line) + ": ";
    if (pos) out += "position " + std::to_string(pos) + ": ";
    return out + msg;
  }
  std::size_t position_;
  std::size_t line_;
};

// Input well-formed but outside the domain of the operation
// (not a solution, trivial word where nontrivial needed, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource guard was hit.
class LimitExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace pcg
