#include "qemtp/qsim/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qemtp::qsim {

void AnsatzConfig::validate() const {
  if (n_qubits < 1) throw InvalidParameter("ansatz: need at least one qubit");
  if (layers < 0) throw InvalidParameter("ansatz: negative layer count");
  const auto expected = parameter_count(n_qubits, layers);
  if (static_cast<std::size_t>(params.size()) != expected)
    throw InvalidParameter("ansatz: expected " + std::to_string(expected) + " parameters, got " +
                           std::to_string(params.size()));
  if (!params.allFinite()) throw InvalidParameter("ansatz: non-finite parameter");
}

namespace {

template <typename RyFn, typename CzFn>
void walk_ansatz(const AnsatzConfig& cfg, RyFn&& ry, CzFn&& cz) {
  const int n = cfg.n_qubits;
  for (int q = 0; q < n; ++q) ry(q, cfg.params(q));
  for (int layer = 1; layer <= cfg.layers; ++layer) {
    for (int q = 0; q + 1 < n; q += 2) cz(q, q + 1);
    for (int q = 1; q + 1 < n; q += 2) cz(q, q + 1);
    for (int q = 0; q < n; ++q) ry(q, cfg.params(layer * n + q));
  }
}

}  // namespace

void apply_ansatz(StateVector& state, const AnsatzConfig& cfg, int offset) {
  cfg.validate();
  walk_ansatz(
      cfg, [&](int q, double theta) { state.apply_ry(offset + q, theta); },
      [&](int a, int b) { state.apply_cz(offset + a, offset + b); });
}

StateVector ansatz_state(const AnsatzConfig& cfg) {
  StateVector s(cfg.n_qubits);
  apply_ansatz(s, cfg);
  return s;
}

Vector ansatz_real(const AnsatzConfig& cfg) {
  cfg.validate();
  Vector v = Vector::Zero(Eigen::Index{1} << cfg.n_qubits);
  v(0) = 1.0;
  std::span<double> span(v.data(), static_cast<std::size_t>(v.size()));
  walk_ansatz(
      cfg, [&](int q, double theta) { real::apply_ry(span, cfg.n_qubits, q, theta); },
      [&](int a, int b) { real::apply_cz(span, cfg.n_qubits, a, b); });
  return v;
}

AmplitudeEncoder::AmplitudeEncoder(const Vector& target) : target_(target) {
  const auto dim = static_cast<std::size_t>(target.size());
  if (dim < 2 || !is_power_of_two(dim)) throw InvalidParameter("amplitude_encode: length must be a power of two >= 2");
  if (std::abs(target.norm() - 1.0) > 1e-12) throw InvalidParameter("amplitude_encode: target is not a unit vector");
  n_qubits_ = exact_log2(dim);

  // norms[k][p]: l2 norm of the amplitudes whose first k qubits read p.
  std::vector<Vector> norms(static_cast<std::size_t>(n_qubits_) + 1);
  norms[static_cast<std::size_t>(n_qubits_)] = target.cwiseAbs();
  for (int k = n_qubits_ - 1; k >= 0; --k) {
    const Vector& below = norms[static_cast<std::size_t>(k) + 1];
    Vector level(Eigen::Index{1} << k);
    for (Eigen::Index p = 0; p < level.size(); ++p) level(p) = std::hypot(below(2 * p), below(2 * p + 1));
    norms[static_cast<std::size_t>(k)] = level;
  }
  angles_.resize(static_cast<std::size_t>(n_qubits_));
  for (int k = 0; k < n_qubits_; ++k) {
    Vector theta(Eigen::Index{1} << k);
    for (Eigen::Index p = 0; p < theta.size(); ++p) {
      const bool leaf = (k == n_qubits_ - 1);
      const double a = leaf ? target(2 * p) : norms[static_cast<std::size_t>(k) + 1](2 * p);
      const double b = leaf ? target(2 * p + 1) : norms[static_cast<std::size_t>(k) + 1](2 * p + 1);
      theta(p) = 2.0 * std::atan2(b, a);
    }
    angles_[static_cast<std::size_t>(k)] = theta;
  }
}

void AmplitudeEncoder::apply(StateVector& state, int offset, bool adjoint, int control) const {
  if (offset < 0 || offset + n_qubits_ > state.n_qubits())
    throw InvalidParameter("amplitude_encode: register does not fit the state");
  const int total = state.n_qubits();
  for (int step = 0; step < n_qubits_; ++step) {
    const int k = adjoint ? n_qubits_ - 1 - step : step;
    const Vector& theta = angles_[static_cast<std::size_t>(k)];
    // Uniformly controlled Ry: the angle is selected by the k-bit prefix.
    const std::size_t target_bit = state.bit_of(offset + k);
    const std::size_t control_bit = control >= 0 ? state.bit_of(control) : 0;
    ComplexVector& amps = state.mutable_amplitudes();
    for (std::size_t i = 0; i < state.dimension(); ++i) {
      if (i & target_bit) continue;
      if (control_bit && !(i & control_bit)) continue;
      std::size_t prefix = 0;
      for (int t = 0; t < k; ++t) prefix = (prefix << 1) | ((i >> (total - 1 - (offset + t))) & 1u);
      const double angle = adjoint ? -theta(static_cast<Eigen::Index>(prefix)) : theta(static_cast<Eigen::Index>(prefix));
      const double c = std::cos(0.5 * angle);
      const double s = std::sin(0.5 * angle);
      const auto i0 = static_cast<Eigen::Index>(i);
      const auto i1 = static_cast<Eigen::Index>(i | target_bit);
      const Complex a0 = amps(i0);
      const Complex a1 = amps(i1);
      amps(i0) = c * a0 - s * a1;
      amps(i1) = s * a0 + c * a1;
    }
  }
}

void AmplitudeEncoder::apply_real(std::span<double> state, bool adjoint) const {
  if (state.size() != (std::size_t{1} << n_qubits_)) throw InvalidParameter("amplitude_encode: length mismatch");
  for (int step = 0; step < n_qubits_; ++step) {
    const int k = adjoint ? n_qubits_ - 1 - step : step;
    const Vector& theta = angles_[static_cast<std::size_t>(k)];
    const int shift = n_qubits_ - k;  // index >> shift is the k-bit prefix
    const std::size_t target_bit = std::size_t{1} << (n_qubits_ - 1 - k);
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (i & target_bit) continue;
      const double angle = theta(static_cast<Eigen::Index>(i >> shift));
      const double c = std::cos(0.5 * angle);
      const double s = adjoint ? -std::sin(0.5 * angle) : std::sin(0.5 * angle);
      const double a0 = state[i];
      const double a1 = state[i | target_bit];
      state[i] = c * a0 - s * a1;
      state[i | target_bit] = s * a0 + c * a1;
    }
  }
}

Matrix AmplitudeEncoder::to_matrix() const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  Matrix m = Matrix::Identity(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) apply_real(std::span<double>(m.col(c).data(), static_cast<std::size_t>(dim)));
  return m;
}

namespace {

void apply_op(StateVector& state, const CircuitOp& op, int offset, int control) {
  if (const auto* s = std::get_if<pauli::PauliString>(&op)) {
    state.apply_pauli_string(*s, offset, control);
  } else {
    const auto& step = std::get<EncodingStep>(op);
    if (!step.encoder) throw InvalidParameter("hadamard_test: null encoder");
    step.encoder->apply(state, offset, step.adjoint, control);
  }
}

}  // namespace

double hadamard_test(const OperatorSequence& w, const AnsatzConfig& ansatz, TestPart part,
                     std::optional<ShotMode> shots) {
  StateVector state(ansatz.n_qubits + 1);
  constexpr int kAncilla = 0;
  state.apply_h(kAncilla);
  apply_ansatz(state, ansatz, 1);
  for (const auto& op : w) apply_op(state, op, 1, kAncilla);
  if (part == TestPart::kImaginary) state.apply_sdg(kAncilla);
  state.apply_h(kAncilla);
  const double p0 = std::clamp(state.probability_zero(kAncilla), 0.0, 1.0);
  if (!shots) return 2.0 * p0 - 1.0;
  if (shots->shots == 0) throw InvalidParameter("hadamard_test: shot count must be positive");
  std::mt19937_64 rng(shots->seed);
  std::binomial_distribution<std::uint64_t> draw(shots->shots, p0);
  const double zeros = static_cast<double>(draw(rng));
  return 2.0 * zeros / static_cast<double>(shots->shots) - 1.0;
}

double direct_expectation(const OperatorSequence& w, const AnsatzConfig& ansatz, TestPart part) {
  const StateVector psi = ansatz_state(ansatz);
  StateVector phi = psi;
  for (const auto& op : w) apply_op(phi, op, 0, -1);
  const Complex value = psi.amplitudes().dot(phi.amplitudes());
  return part == TestPart::kReal ? value.real() : value.imag();
}

pauli::PauliString z_on(int n_qubits, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) throw InvalidParameter("z_on: qubit out of range");
  return pauli::PauliString(n_qubits, std::uint64_t{3} << (2 * (n_qubits - 1 - qubit)));
}

OperatorSequence delta_operator(const pauli::PauliString& g_i, const pauli::PauliString& g_ip,
                                const AmplitudeEncoder& u, int j) {
  return {g_i, EncodingStep{&u, true}, z_on(u.n_qubits(), j), EncodingStep{&u, false}, g_ip};
}

OperatorSequence beta_operator(const pauli::PauliString& g_i, const pauli::PauliString& g_ip) {
  return {g_i, g_ip};
}

double delta_term(const AnsatzConfig& ansatz, const pauli::PauliString& g_i, const pauli::PauliString& g_ip,
                  const AmplitudeEncoder& u, int j, std::optional<ShotMode> shots) {
  return hadamard_test(delta_operator(g_i, g_ip, u, j), ansatz, TestPart::kReal, shots);
}

double beta_term(const AnsatzConfig& ansatz, const pauli::PauliString& g_i, const pauli::PauliString& g_ip,
                 std::optional<ShotMode> shots) {
  return hadamard_test(beta_operator(g_i, g_ip), ansatz, TestPart::kReal, shots);
}

}  // namespace qemtp::qsim
