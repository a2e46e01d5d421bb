#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace docrank {

// Root of every error the library throws on bad input or contract violation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SelfEdgeError : public Error {
 public:
  using Error::Error;
};

// Raised when a CI count on one ordered pair would exceed 1.
class InheritanceCountError : public Error {
 public:
  using Error::Error;
};

class UnknownNodeError : public Error {
 public:
  using Error::Error;
};

class NodeKindConflictError : public Error {
 public:
  using Error::Error;
};

// Malformed input with a 1-based line number and a field (or column) hint.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
      : Error(format(source, line, column, message)),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& source, std::size_t line, std::size_t column,
                            const std::string& message) {
    std::string out = source.empty() ? std::string("<input>") : source;
    out += ":" + std::to_string(line);
    if (column > 0) out += ":" + std::to_string(column);
    return out + ": " + message;
  }

  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace docrank
