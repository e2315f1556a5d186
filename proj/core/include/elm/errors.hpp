#pragma once

#include <stdexcept>
#include <string>

namespace elm {

// Error taxonomy mirrors the CLI exit codes: ConfigError -> 2,
// DataError/FormatError -> 3, SolverError -> 4.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operand shapes do not conform (programming or wiring mistake).
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A file is not in the expected on-disk format.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Input values are invalid (out-of-range label, non-finite entry, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// A configuration value is unusable (infeasible mask size, epsilon too
// small, unknown method name, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// The linear solve failed or did not meet the residual contract.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace elm
