#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qemtp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value is out of its documented domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The network cannot be stamped into a nonsingular admittance matrix.
class AssemblyError : public Error {
 public:
  AssemblyError(const std::string& what, std::vector<int> isolated_nodes)
      : Error(what), isolated_nodes_(std::move(isolated_nodes)) {}

  const std::vector<int>& isolated_nodes() const noexcept { return isolated_nodes_; }

 private:
  std::vector<int> isolated_nodes_;
};

/// Direct solve refused: matrix singular or too ill-conditioned.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double rcond)
      : Error(what), rcond_(rcond) {}

  /// Reciprocal condition estimate of the rejected matrix.
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// An iterative procedure stopped without reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> residual_trace)
      : Error(what), residual_trace_(std::move(residual_trace)) {}

  const std::vector<double>& residual_trace() const noexcept { return residual_trace_; }

 private:
  std::vector<double> residual_trace_;
};

/// Input text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
inline int exact_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace qemtp
