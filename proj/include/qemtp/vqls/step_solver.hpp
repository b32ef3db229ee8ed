#pragma once

#include "qemtp/emtp/solver.hpp"
#include "qemtp/vqls/solver.hpp"

#include <memory>
#include <optional>

namespace qemtp::vqls {

/// Totals over the steps a QemtpStepSolver handled with VQLS.
struct QemtpRunStats {
  std::size_t vqls_steps = 0;
  std::size_t classical_steps = 0;
  std::uint64_t iterations = 0;
  std::uint64_t compensation_rounds = 0;
  int max_compensation_rounds = 0;
  std::uint64_t circuits_saved = 0;  ///< iterations x per-evaluation saving
  double max_relative_error = 0.0;
  std::size_t term_count = 0;
  int n_qubits = 0;
};

/// Step solver for the transient loop: VQLS with compensation from
/// `qemtp_start` on, a direct solve before it. Every VQLS step is also solved
/// directly and the relative error ||v - v*|| / ||v*|| is reported.
class QemtpStepSolver : public emtp::StepSolver {
 public:
  explicit QemtpStepSolver(CompensationConfig config, double qemtp_start = 0.0);

  void prepare(const Matrix& g) override;
  emtp::StepOutcome solve(const Vector& injection, double t) override;

  const QemtpRunStats& stats() const noexcept { return stats_; }
  const VqlsSolver& vqls() const;

 private:
  CompensationConfig config_;
  double qemtp_start_ = 0.0;
  emtp::DirectSolver direct_;
  std::unique_ptr<VqlsSolver> vqls_;
  std::uint64_t saved_per_evaluation_ = 0;
  QemtpRunStats stats_;
};

/// ||v - v*|| / ||v*||, or ||v - v*|| when v* = 0.
double relative_error(const Vector& v, const Vector& reference);

}  // namespace qemtp::vqls
