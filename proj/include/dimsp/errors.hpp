#pragma once

#include <stdexcept>
#include <string>

namespace dimsp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct EmptyPopulation : Error {
  using Error::Error;
};

struct PopulationTooSmall : Error {
  using Error::Error;
};

struct EmptyPool : Error {
  using Error::Error;
};

struct ZeroDegree : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct InvalidGenome : Error {
  using Error::Error;
};

struct SpaceTooLarge : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct MismatchedConfigs : Error {
  using Error::Error;
};

struct UnsupportedEdgeWeightType : Error {
  using Error::Error;
};

/// Parse failure in an instance or config file; carries the 1-based line number.
struct ParseError : Error {
  ParseError(int line_number, const std::string& what)
      : Error("line " + std::to_string(line_number) + ": " + what), line(line_number) {}
  int line;
};

}  // namespace dimsp
