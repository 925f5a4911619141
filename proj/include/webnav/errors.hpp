#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace webnav {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input text. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input is well-formed but yields nothing usable (empty graph, empty log).
class DataError : public Error {
 public:
  using Error::Error;
};

// Too few or degenerate samples for an estimate.
class StatisticsError : public Error {
 public:
  using Error::Error;
};

// Step outcomes delivered in an impossible order.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace webnav
