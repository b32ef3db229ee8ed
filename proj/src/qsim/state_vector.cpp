#include "qemtp/qsim/state_vector.hpp"

#include <cmath>
#include <string>

namespace qemtp::qsim {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) throw InvalidParameter("StateVector: qubit count out of range");
  amplitudes_ = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  amplitudes_(0) = 1.0;
}

StateVector StateVector::from_amplitudes(ComplexVector amplitudes) {
  const auto dim = static_cast<std::size_t>(amplitudes.size());
  if (dim < 2 || !is_power_of_two(dim)) throw InvalidParameter("StateVector: length must be a power of two >= 2");
  StateVector s(exact_log2(dim));
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_)
    throw InvalidParameter("StateVector: qubit " + std::to_string(qubit) + " out of range for " +
                           std::to_string(n_qubits_) + " qubits");
}

StateVector& StateVector::apply_gate(const Gate2& gate, int target, int control) {
  check_qubit(target);
  std::size_t control_bit = 0;
  if (control >= 0) {
    check_qubit(control);
    if (control == target) throw InvalidParameter("StateVector: control equals target");
    control_bit = bit_of(control);
  }
  const std::size_t t = bit_of(target);
  const std::size_t dim = dimension();
  Complex* a = amplitudes_.data();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & t) continue;
    if (control_bit && !(i & control_bit)) continue;
    const Complex a0 = a[i];
    const Complex a1 = a[i | t];
    a[i] = gate[0] * a0 + gate[1] * a1;
    a[i | t] = gate[2] * a0 + gate[3] * a1;
  }
  return *this;
}

Gate2 ry_gate(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {Complex(c), Complex(-s), Complex(s), Complex(c)};
}

Gate2 pauli_gate(pauli::PauliLetter letter) {
  using pauli::PauliLetter;
  const Complex i(0.0, 1.0);
  switch (letter) {
    case PauliLetter::I: return {1.0, 0.0, 0.0, 1.0};
    case PauliLetter::X: return {0.0, 1.0, 1.0, 0.0};
    case PauliLetter::Y: return {0.0, -i, i, 0.0};
    case PauliLetter::Z: return {1.0, 0.0, 0.0, -1.0};
  }
  return {1.0, 0.0, 0.0, 1.0};
}

StateVector& StateVector::apply_ry(int qubit, double theta, int control) {
  return apply_gate(ry_gate(theta), qubit, control);
}

StateVector& StateVector::apply_h(int qubit) {
  const double r = 1.0 / std::sqrt(2.0);
  return apply_gate({r, r, r, -r}, qubit);
}

StateVector& StateVector::apply_s(int qubit) { return apply_gate({1.0, 0.0, 0.0, Complex(0.0, 1.0)}, qubit); }

StateVector& StateVector::apply_sdg(int qubit) { return apply_gate({1.0, 0.0, 0.0, Complex(0.0, -1.0)}, qubit); }

StateVector& StateVector::apply_cz(int q1, int q2) {
  check_qubit(q1);
  check_qubit(q2);
  if (q1 == q2) throw InvalidParameter("StateVector: CZ needs two distinct qubits");
  const std::size_t mask = bit_of(q1) | bit_of(q2);
  for (std::size_t i = 0; i < dimension(); ++i)
    if ((i & mask) == mask) amplitudes_(static_cast<Eigen::Index>(i)) = -amplitudes_(static_cast<Eigen::Index>(i));
  return *this;
}

StateVector& StateVector::apply_pauli(pauli::PauliLetter letter, int qubit, int control) {
  if (letter == pauli::PauliLetter::I) {
    check_qubit(qubit);
    return *this;
  }
  return apply_gate(pauli_gate(letter), qubit, control);
}

StateVector& StateVector::apply_pauli_string(const pauli::PauliString& s, int offset, int control) {
  if (offset < 0 || offset + s.size() > n_qubits_) throw InvalidParameter("StateVector: Pauli string does not fit");
  for (int q = 0; q < s.size(); ++q) apply_pauli(s[q], offset + q, control);
  return *this;
}

double StateVector::probability_zero(int qubit) const {
  check_qubit(qubit);
  const std::size_t t = bit_of(qubit);
  double p = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i)
    if (!(i & t)) p += std::norm(amplitudes_(static_cast<Eigen::Index>(i)));
  return p;
}

namespace real {

void apply_ry(std::span<double> state, int n_qubits, int qubit, double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::size_t t = std::size_t{1} << (n_qubits - 1 - qubit);
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (i & t) continue;
    const double a0 = state[i];
    const double a1 = state[i | t];
    state[i] = c * a0 - s * a1;
    state[i | t] = s * a0 + c * a1;
  }
}

void apply_cz(std::span<double> state, int n_qubits, int q1, int q2) {
  const std::size_t mask = (std::size_t{1} << (n_qubits - 1 - q1)) | (std::size_t{1} << (n_qubits - 1 - q2));
  for (std::size_t i = 0; i < state.size(); ++i)
    if ((i & mask) == mask) state[i] = -state[i];
}

}  // namespace real

}  // namespace qemtp::qsim
