#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace strel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formula text that does not match the grammar.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column,
             std::vector<std::string> expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// Well-formed input that cannot be evaluated: unresolved names, invalid
/// models, empty evaluation horizons, bad configuration values.
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed files.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace strel
