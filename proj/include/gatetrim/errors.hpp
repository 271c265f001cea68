#pragma once

#include <stdexcept>
#include <string>

namespace gatetrim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
              ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Gate name outside the accepted vocabulary.
class UnsupportedGateError : public Error {
 public:
  UnsupportedGateError(const std::string& gate, const std::string& where)
      : Error(where + "unsupported gate '" + gate + "'"), gate_(gate) {}

  const std::string& gate() const { return gate_; }

 private:
  std::string gate_;
};

class QubitRangeError : public Error {
 public:
  using Error::Error;
};

/// Circuit too wide for exact dense simulation.
class WindowLimitError : public Error {
 public:
  using Error::Error;
};

/// Non-finite merit or gradient encountered during a search.
class OptimizerAbort : public Error {
 public:
  using Error::Error;
};

}  // namespace gatetrim
