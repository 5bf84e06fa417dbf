#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace omasid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not match the operation's contract.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Bad excitation or solver configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Structural scenario problem (bad schedule, dangling mode id, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Scenario file does not parse or is missing required fields.
class SchemaError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// A linear solve hit a singular system.
class SingularMatrixError : public Error {
  public:
    using Error::Error;
};

/// Non-finite values produced by a numeric kernel.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Segments with mismatched vertex sets fed to a per-mode operation.
class GroupingError : public Error {
  public:
    using Error::Error;
};

/// The integrated state left the representable range.
class DivergenceError : public Error {
  public:
    DivergenceError(int interval_index, const std::string& message)
        : Error(message), interval_index(interval_index) {}

    int interval_index;
};

} // namespace omasid
