#pragma once

#include "qemtp/common.hpp"

#include <Eigen/LU>

#include <optional>

namespace qemtp::emtp {

struct StepOutcome {
  Vector voltages;
  /// ||v - v*|| / ||v*|| against a direct solve of the same step, when the
  /// solver computes one.
  std::optional<double> relative_error;
};

/// Solves G v = i for a sequence of right-hand sides with a fixed G.
class StepSolver {
 public:
  virtual ~StepSolver() = default;
  virtual void prepare(const Matrix& g) = 0;
  virtual StepOutcome solve(const Vector& injection, double t) = 0;
};

/// Dense LU with partial pivoting, factored once in prepare().
class DirectSolver : public StepSolver {
 public:
  /// Matrices with a reciprocal condition estimate below this are refused.
  static constexpr double kMinRcond = 1e-14;
  /// Largest accepted ||G v - i|| / ||i||.
  static constexpr double kMaxResidual = 1e-12;

  DirectSolver() = default;
  explicit DirectSolver(const Matrix& g) { prepare(g); }

  void prepare(const Matrix& g) override;
  StepOutcome solve(const Vector& injection, double t) override;
  Vector solve(const Vector& injection) const;

  double rcond() const noexcept { return rcond_; }

 private:
  Matrix g_;
  Eigen::PartialPivLU<Matrix> lu_;
  double rcond_ = 0.0;
};

/// One-off direct solve of G v = i.
Vector classical_solve(const Matrix& g, const Vector& i);

}  // namespace qemtp::emtp
