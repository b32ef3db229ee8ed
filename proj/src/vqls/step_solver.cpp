#include "qemtp/vqls/step_solver.hpp"

#include <algorithm>

namespace qemtp::vqls {

double relative_error(const Vector& v, const Vector& reference) {
  if (v.size() != reference.size()) throw InvalidParameter("relative_error: length mismatch");
  const double ref = reference.norm();
  const double diff = (v - reference).norm();
  return ref > 0.0 ? diff / ref : diff;
}

QemtpStepSolver::QemtpStepSolver(CompensationConfig config, double qemtp_start)
    : config_(std::move(config)), qemtp_start_(qemtp_start) {
  config_.validate();
}

void QemtpStepSolver::prepare(const Matrix& g) {
  direct_.prepare(g);
  vqls_ = std::make_unique<VqlsSolver>(g, config_);
  saved_per_evaluation_ = circuit_accounting(vqls_->decomposition()).saved;
  stats_ = {};
  stats_.term_count = vqls_->decomposition().size();
  stats_.n_qubits = vqls_->n_qubits();
}

const VqlsSolver& QemtpStepSolver::vqls() const {
  if (!vqls_) throw InvalidParameter("qemtp: solver not prepared");
  return *vqls_;
}

emtp::StepOutcome QemtpStepSolver::solve(const Vector& injection, double t) {
  if (!vqls_) throw InvalidParameter("qemtp: solver not prepared");
  Vector reference = direct_.solve(injection);
  if (t < qemtp_start_ - 1e-12) {
    ++stats_.classical_steps;
    return {std::move(reference), std::nullopt};
  }
  const VqlsSolution sol = vqls_->solve(injection);
  const double err = relative_error(sol.v_physical, reference);
  ++stats_.vqls_steps;
  stats_.iterations += static_cast<std::uint64_t>(sol.iterations);
  stats_.compensation_rounds += static_cast<std::uint64_t>(sol.compensation_rounds);
  stats_.max_compensation_rounds = std::max(stats_.max_compensation_rounds, sol.compensation_rounds);
  stats_.circuits_saved += static_cast<std::uint64_t>(sol.iterations) * saved_per_evaluation_;
  stats_.max_relative_error = std::max(stats_.max_relative_error, err);
  return {sol.v_physical, err};
}

}  // namespace qemtp::vqls
