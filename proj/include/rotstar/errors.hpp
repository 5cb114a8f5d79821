// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <stdexcept>
#include <string>

namespace rotstar {

/// Exit codes used by the CLI. Library code throws the exception types below;
/// the driver maps them to these process exit codes.
enum class ExitCode : int {
  success = 0,
  failure = 1,      ///< unexpected internal error
  validation = 2,   ///< bad parameters / config
  convergence = 3,  ///< an iteration failed to reach its tolerance
  io = 4,           ///< file read/write problem
};

/// Thrown when user-supplied parameters or configuration are invalid.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thrown when an iterative scheme does not reach its tolerance within its
/// iteration budget. Carries enough context to still write a report.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what),
        iterations(iterations),
        residual(residual) {}
  int iterations;
  double residual;
};

/// Thrown when a reconstructed metric violates a nondegeneracy requirement:
/// the static-frame norm factor is not positive, or the gradient of the
/// cylindrical stretch vanishes somewhere. Carries the worst offending
/// value in the residual slot; maps to the convergence exit code because
/// it means the computed state left the validated regime.
class DegenerateMetricError : public ConvergenceError {
 public:
  DegenerateMetricError(const std::string& what, double worst)
      : ConvergenceError(what, 0, worst) {}
};

/// Thrown when the vacuum boundary cannot be located along some ray
/// (the enthalpy does not change sign where it must).
class BoundaryNotFoundError : public std::runtime_error {
 public:
  explicit BoundaryNotFoundError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Thrown on file I/O problems.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rotstar
