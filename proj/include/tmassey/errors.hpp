#pragma once

#include <stdexcept>
#include <string>

namespace tmassey {

// Base class for every error raised by the library. The CLI maps each
// subclass onto its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad header, bad field, bad number).
class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// Input parsed but breaks a MatchLog invariant (team twice in a round, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Numeric failures: singular or disconnected systems.
class NumericError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraph : public NumericError {
 public:
  explicit DisconnectedGraph(std::size_t components)
      : NumericError("match graph has " + std::to_string(components) +
                     " connected components; rating is undefined across components"),
        components_(components) {}
  std::size_t components() const { return components_; }

 private:
  std::size_t components_;
};

class TeamWithoutMatches : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularSystem : public NumericError {
 public:
  using NumericError::NumericError;
};

// Invalid user configuration (bad constants, unknown team or method).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tmassey
