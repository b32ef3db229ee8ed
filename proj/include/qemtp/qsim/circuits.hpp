#pragma once

#include "qemtp/common.hpp"
#include "qemtp/pauli/pauli_string.hpp"
#include "qemtp/qsim/state_vector.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace qemtp::qsim {

/// Hardware-efficient ansatz V(alpha): an Ry on every qubit, then per layer a
/// CZ ladder on pairs (0,1),(2,3),... followed by (1,2),(3,4),... and another
/// Ry on every qubit. Parameter b*n + q drives the Ry on qubit q in block b.
struct AnsatzConfig {
  int n_qubits = 1;
  int layers = 0;
  Vector params;

  static std::size_t parameter_count(int n_qubits, int layers) {
    return static_cast<std::size_t>(n_qubits) * static_cast<std::size_t>(layers + 1);
  }
  void validate() const;
};

/// Applies V(alpha) to qubits [offset, offset + cfg.n_qubits) of `state`.
void apply_ansatz(StateVector& state, const AnsatzConfig& cfg, int offset = 0);
/// V(alpha)|0...0>.
StateVector ansatz_state(const AnsatzConfig& cfg);
/// Real amplitudes of V(alpha)|0...0> (V is a real orthogonal circuit).
Vector ansatz_real(const AnsatzConfig& cfg);

/// State preparation U with U|0...0> = target, for a real unit target.
///
/// Built as the binary tree of uniformly controlled Ry rotations: level k
/// rotates qubit k conditioned on the value of qubits 0..k-1. Signed
/// amplitudes come out of atan2 at the last level, so no phase gates occur.
class AmplitudeEncoder {
 public:
  explicit AmplitudeEncoder(const Vector& target);

  int n_qubits() const noexcept { return n_qubits_; }
  const Vector& target() const noexcept { return target_; }

  /// U (or U^dagger) on qubits [offset, offset + n_qubits()), optionally
  /// controlled by `control`.
  void apply(StateVector& state, int offset = 0, bool adjoint = false, int control = -1) const;
  /// U or U^dagger on a real vector of length 2^n.
  void apply_real(std::span<double> state, bool adjoint = false) const;
  /// Dense orthogonal matrix of U.
  Matrix to_matrix() const;

 private:
  int n_qubits_ = 0;
  Vector target_;
  std::vector<Vector> angles_;  // angles_[k] has 2^k entries
};

/// One factor of the operator W in a Hadamard test.
struct EncodingStep {
  const AmplitudeEncoder* encoder = nullptr;
  bool adjoint = false;
};
using CircuitOp = std::variant<pauli::PauliString, EncodingStep>;

/// Ops applied in sequence: W = ops.back() * ... * ops.front().
using OperatorSequence = std::vector<CircuitOp>;

enum class TestPart { kReal, kImaginary };

struct ShotMode {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Hadamard test for <0|V^dagger W V|0>.
///
/// The ancilla (qubit 0) is put in |+>, the system register (qubits 1..n) is
/// prepared by V, W is applied controlled on the ancilla, an S^dagger is
/// inserted for the imaginary part, and after the final H the estimate is
/// P(0) - P(1). Without `shots` the probabilities are exact; with it the
/// estimate comes from `shots` Bernoulli draws of a seeded generator.
double hadamard_test(const OperatorSequence& w, const AnsatzConfig& ansatz, TestPart part = TestPart::kReal,
                     std::optional<ShotMode> shots = std::nullopt);

/// Re or Im of <psi|W|psi> with psi = V|0>, evaluated directly on the
/// register without an ancilla. Independent of hadamard_test().
double direct_expectation(const OperatorSequence& w, const AnsatzConfig& ansatz, TestPart part = TestPart::kReal);

/// Z on qubit j of an n-qubit register.
pauli::PauliString z_on(int n_qubits, int qubit);

/// W for delta_{i i' j} = <0|V^dagger g_i'^dagger U (Z_j (x) I) U^dagger g_i V|0>.
OperatorSequence delta_operator(const pauli::PauliString& g_i, const pauli::PauliString& g_ip,
                                const AmplitudeEncoder& u, int j);
/// W for beta_{i i'} = <0|V^dagger g_i'^dagger g_i V|0> (no U, no Z_j).
OperatorSequence beta_operator(const pauli::PauliString& g_i, const pauli::PauliString& g_ip);

double delta_term(const AnsatzConfig& ansatz, const pauli::PauliString& g_i, const pauli::PauliString& g_ip,
                  const AmplitudeEncoder& u, int j, std::optional<ShotMode> shots = std::nullopt);
double beta_term(const AnsatzConfig& ansatz, const pauli::PauliString& g_i, const pauli::PauliString& g_ip,
                 std::optional<ShotMode> shots = std::nullopt);

}  // namespace qemtp::qsim
