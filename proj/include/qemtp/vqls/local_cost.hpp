#pragma once

#include "qemtp/common.hpp"
#include "qemtp/pauli/decomposition.hpp"
#include "qemtp/qsim/circuits.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace qemtp::vqls {

enum class CostMode {
  /// Sum over terms collapsed into A|psi>: N = sum_j <A psi| U Z_j U^dagger |A psi>,
  /// D = ||A psi||^2. Algebraically identical to the term sums below.
  kExact,
  /// Every delta/beta term as a direct inner product on the register.
  kTermwise,
  /// Every delta/beta term through a simulated Hadamard test.
  kHadamard,
};

struct CostOptions {
  CostMode mode = CostMode::kExact;
  /// Hadamard mode only: sample every test instead of using exact probabilities.
  std::optional<qsim::ShotMode> shots;
  /// Skip imaginary-part circuits. Termwise and Hadamard modes evaluate them
  /// when false, to check that they cancel.
  bool real_only = true;
};

struct CostEvaluation {
  double value = 0.0;        ///< C_L = 1/2 - N / (2 n D)
  double numerator = 0.0;    ///< N = sum_j sum_{ii'} c_i c_i' delta_{ii'j}
  double denominator = 0.0;  ///< D = sum_{ii'} c_i c_i' beta_{ii'}
  /// Imaginary parts of N and D when they were evaluated.
  double numerator_imag = 0.0;
  double denominator_imag = 0.0;
  std::uint64_t circuits_evaluated = 0;
  std::uint64_t circuits_saved = 0;
  /// Shot mode: binomial standard error of `value` (independent tests).
  double standard_error = 0.0;
};

/// y += coefficient * g y_in for a Pauli string with an even number of Y
/// letters, whose matrix is real.
void apply_real_pauli(const pauli::PauliString& s, double coefficient, const Vector& in, Vector& out);

/// Local VQLS cost of a Pauli-decomposed matrix A = sum c_i g_i against the
/// state U|0> prepared by `encoder`, for the layered Ry/CZ ansatz.
class LocalCost {
 public:
  LocalCost(const pauli::PauliDecomposition& decomposition, const qsim::AmplitudeEncoder& encoder, int layers,
            CostOptions options = {});

  int n_qubits() const noexcept { return n_; }
  int layers() const noexcept { return layers_; }
  std::size_t parameter_count() const { return qsim::AnsatzConfig::parameter_count(n_, layers_); }
  const CostOptions& options() const noexcept { return options_; }

  /// `stream` selects the sampling stream in shot mode so repeated
  /// evaluations draw independent, reproducible samples.
  CostEvaluation evaluate(const Vector& alpha, std::uint64_t stream = 0) const;

  /// dC/dalpha by the parameter-shift rule: N and D are each evaluated at
  /// alpha_k +- pi/2 and combined by the quotient rule.
  Vector gradient(const Vector& alpha, std::uint64_t stream = 0) const;

  /// Per-term tables as CSV: `i,ip,j,delta` and `i,ip,beta` (strings by name).
  void write_term_tables(const Vector& alpha, std::ostream& delta_csv, std::ostream& beta_csv) const;

 private:
  CostEvaluation evaluate_exact(const Vector& alpha) const;
  CostEvaluation evaluate_terms(const Vector& alpha, std::uint64_t stream) const;
  qsim::AnsatzConfig ansatz(const Vector& alpha) const;

  const pauli::PauliDecomposition& decomposition_;
  const qsim::AmplitudeEncoder& encoder_;
  int n_ = 0;
  int layers_ = 0;
  CostOptions options_;
  std::vector<double> z_sum_;  // sum_j z_j(x) for every basis index x
};

}  // namespace qemtp::vqls
