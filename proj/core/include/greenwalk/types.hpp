#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace greenwalk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tolerances shared across modules. Matrix identities scale with n, time-valued
// comparisons scale with the magnitude of the times involved.
namespace tol {
inline constexpr double kRowStochastic = 1e-12;
inline constexpr double kDistributionSum = 1e-12;
inline constexpr double kStationaryResidual = 1e-10;
inline constexpr double kExitClamp = 1e-10;
inline constexpr double kZeroEigenvalue = 1e-10;

inline double matrix(Index n) { return 1e-9 * static_cast<double>(std::max<Index>(n, 1)); }
inline double time(double scale) { return 1e-8 * std::max(1.0, scale); }
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph text. line() is 1-based; 0 when no line applies (JSON input).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Structural precondition violated (zero out-weight, not strongly connected, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for this input (e.g. spectral routines on a digraph).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Linear solve or eigensolve failed.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A computed object violates an identity it must satisfy.
class IntegrityError : public Error {
 public:
  IntegrityError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A simulated walk exceeded its step cap.
class RunawayError : public Error {
 public:
  using Error::Error;
};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace greenwalk
