#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eqlat {

// Failure while parsing one of the text formats. `offset` is a byte offset
// into the parsed string, or a 1-based line number when parsing a file
// (`is_line` tells which).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset, bool is_line = false)
      : std::runtime_error(msg + (is_line ? " (line " : " (byte ") +
                           std::to_string(offset) + ")"),
        offset_(offset),
        is_line_(is_line) {}

  std::size_t offset() const noexcept { return offset_; }
  bool is_line() const noexcept { return is_line_; }

 private:
  std::size_t offset_;
  bool is_line_;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent or out-of-contract input data (unknown ids, broken invariants).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource budget would be exceeded (e.g. exact tuple count).
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative solver hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqlat
