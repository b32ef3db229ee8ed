#pragma once

#include "qemtp/common.hpp"
#include "qemtp/pauli/pauli_string.hpp"

#include <array>
#include <span>

namespace qemtp::qsim {

using Gate2 = std::array<Complex, 4>;  // row-major [[a, b], [c, d]]

/// Dense statevector over n qubits. Qubit q maps to bit (n - 1 - q) of the
/// basis index, so qubit 0 is the leftmost Kronecker factor.
class StateVector {
 public:
  explicit StateVector(int n_qubits);
  /// Takes amplitudes as given; the length must be a power of two.
  static StateVector from_amplitudes(ComplexVector amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  ComplexVector& mutable_amplitudes() noexcept { return amplitudes_; }
  Complex operator[](std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  double norm() const { return amplitudes_.norm(); }

  /// Applies `gate` to `target`; with control >= 0 only on the control=1 subspace.
  StateVector& apply_gate(const Gate2& gate, int target, int control = -1);

  StateVector& apply_ry(int qubit, double theta, int control = -1);
  StateVector& apply_h(int qubit);
  StateVector& apply_s(int qubit);
  StateVector& apply_sdg(int qubit);
  StateVector& apply_cz(int q1, int q2);
  StateVector& apply_pauli(pauli::PauliLetter letter, int qubit, int control = -1);
  /// Letter-by-letter on qubits [offset, offset + s.size()).
  StateVector& apply_pauli_string(const pauli::PauliString& s, int offset = 0, int control = -1);

  /// Probability that measuring `qubit` yields 0.
  double probability_zero(int qubit) const;

  /// Position of qubit q in the basis index.
  std::size_t bit_of(int qubit) const { return std::size_t{1} << (n_qubits_ - 1 - qubit); }

 private:
  void check_qubit(int qubit) const;

  int n_qubits_ = 0;
  ComplexVector amplitudes_;
};

/// Ry(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
Gate2 ry_gate(double theta);
Gate2 pauli_gate(pauli::PauliLetter letter);

namespace real {

// Real-amplitude kernels for the training hot path: Ry and CZ keep a real
// state real. Same bit layout as StateVector.
void apply_ry(std::span<double> state, int n_qubits, int qubit, double theta);
void apply_cz(std::span<double> state, int n_qubits, int q1, int q2);

}  // namespace real

}  // namespace qemtp::qsim
