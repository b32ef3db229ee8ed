#pragma once

#include "qemtp/embed/extended_system.hpp"
#include "qemtp/pauli/decomposition.hpp"
#include "qemtp/vqls/local_cost.hpp"
#include "qemtp/vqls/optimizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qemtp::vqls {

enum class Scaling {
  kNone,
  /// Map D^{-1/2} G~ D^{-1/2} with D = |diag(G~)| instead of G~ itself.
  /// Zero diagonal entries are left unscaled.
  kJacobi,
  /// Jacobi scaling when it lowers the condition number of G~, none otherwise.
  kAuto,
};

/// "none", "jacobi" or "auto"; anything else throws InvalidParameter.
Scaling parse_scaling(const std::string& name);

struct CompensationConfig {
  double eps = 1e-7;  ///< Stop once ||G~ v - i^|| <= eps (amperes).
  int max_rounds = 10;
  int layers = 3;
  Scaling scaling = Scaling::kAuto;
  OptimizerConfig optimizer;
  CostOptions cost;

  void validate() const;
};

struct VqlsSolution {
  Vector alpha_opt;   ///< Angles of the first (uncorrected) solve.
  Vector v_unit;      ///< Normalized padded solution.
  Vector v_physical;  ///< First N entries, volts.
  double residual = 0.0;
  int compensation_rounds = 0;  ///< Corrections after the first solve.
  std::vector<double> cost_history;    ///< Final cost of every solve.
  std::vector<double> residual_trace;  ///< ||G~ v - i^|| before and after every solve.
  int iterations = 0;
  std::uint64_t circuits_evaluated = 0;
  std::uint64_t circuits_saved = 0;
};

/// Circuit counts per cost evaluation for a decomposition with T terms on n
/// qubits.
struct CircuitAccounting {
  std::uint64_t full_count = 0;       ///< 2 (n T^2 + T^2): real and imaginary tests.
  std::uint64_t real_only_count = 0;  ///< n T^2 + T^2.
  std::uint64_t saved = 0;            ///< n T^2, the reduction credited per evaluation.
  std::uint64_t traditional = 0;      ///< 2 n 4^{2n}: every Pauli string, both parts.
};

CircuitAccounting circuit_accounting(int n_qubits, std::uint64_t term_count);
CircuitAccounting circuit_accounting(const pauli::PauliDecomposition& decomposition);

/// VQLS with iterative error compensation for one fixed G and a sequence of
/// right-hand sides.
///
/// The padded matrix, symmetrically scaled by its diagonal per `scaling`,
/// is decomposed once (MLQC at full rank). Every solve trains the ansatz
/// against the scaled, normalized residual, maps the state back, rescales it
/// by least squares against the unscaled residual, and accumulates the
/// correction until ||G~ v - i^|| meets eps. Optimized angles are kept per
/// round index and seed the same round of the next solve.
class VqlsSolver {
 public:
  VqlsSolver(const Matrix& g, CompensationConfig config);

  const pauli::PauliDecomposition& decomposition() const noexcept { return decomposition_; }
  const Matrix& g_tilde() const noexcept { return g_tilde_; }
  /// The matrix that was Pauli-mapped (G~ or its scaled form).
  const Matrix& mapped_matrix() const noexcept { return mapped_; }
  int n_qubits() const noexcept { return n_qubits_; }
  const CompensationConfig& config() const noexcept { return config_; }

  /// Throws ConvergenceError carrying the residual trace when max_rounds
  /// corrections do not reach eps. An all-zero injection returns v = 0.
  VqlsSolution solve(const Vector& i);

 private:
  Matrix g_tilde_;
  Matrix mapped_;
  Vector scale_;  // D^{-1/2}, ones without scaling
  int original_dim_ = 0;
  int n_qubits_ = 0;
  CompensationConfig config_;
  pauli::PauliDecomposition decomposition_;
  std::vector<Vector> warm_;
  std::uint64_t solves_ = 0;
};

/// One-shot solve of G v = i.
VqlsSolution solve_with_compensation(const Matrix& g, const Vector& i, const CompensationConfig& config);

}  // namespace qemtp::vqls
