#include "qemtp/emtp/solver.hpp"

#include <cmath>
#include <cstdio>

namespace qemtp::emtp {

void DirectSolver::prepare(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) throw InvalidParameter("classical_solve: matrix must be square and nonempty");
  if (!g.allFinite()) throw InvalidParameter("classical_solve: non-finite matrix entry");
  g_ = g;
  lu_.compute(g_);
  rcond_ = lu_.rcond();
  if (!(rcond_ >= kMinRcond) || !std::isfinite(rcond_)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "classical_solve: matrix singular or ill-conditioned (rcond %.3e)", rcond_);
    throw SolverError(buf, rcond_);
  }
}

Vector DirectSolver::solve(const Vector& injection) const {
  if (g_.size() == 0) throw InvalidParameter("classical_solve: solver not prepared");
  if (injection.size() != g_.rows()) throw InvalidParameter("classical_solve: dimension mismatch");
  const double norm = injection.norm();
  if (norm == 0.0) return Vector::Zero(injection.size());
  Vector v = lu_.solve(injection);
  const double residual = (g_ * v - injection).norm() / norm;
  if (!(residual <= kMaxResidual)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "classical_solve: relative residual %.3e exceeds %.0e (rcond %.3e)", residual,
                  kMaxResidual, rcond_);
    throw SolverError(buf, rcond_);
  }
  return v;
}

StepOutcome DirectSolver::solve(const Vector& injection, double /*t*/) { return {solve(injection), std::nullopt}; }

Vector classical_solve(const Matrix& g, const Vector& i) { return DirectSolver(g).solve(i); }

}  // namespace qemtp::emtp
