#include "qemtp/vqls/local_cost.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>

namespace qemtp::vqls {

void apply_real_pauli(const pauli::PauliString& s, double coefficient, const Vector& in, Vector& out) {
  const int ny = s.y_count();
  if (ny % 2 != 0) throw InvalidParameter("apply_real_pauli: odd Y count gives an imaginary operator");
  const double phase = (ny % 4 == 0) ? coefficient : -coefficient;
  const std::uint64_t x = s.x_mask();
  const std::uint64_t z = s.z_mask();
  const auto dim = static_cast<std::uint64_t>(in.size());
  for (std::uint64_t col = 0; col < dim; ++col) {
    const double sign = (std::popcount(z & col) & 1) ? -phase : phase;
    out(static_cast<Eigen::Index>(col ^ x)) += sign * in(static_cast<Eigen::Index>(col));
  }
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

LocalCost::LocalCost(const pauli::PauliDecomposition& decomposition, const qsim::AmplitudeEncoder& encoder, int layers,
                     CostOptions options)
    : decomposition_(decomposition), encoder_(encoder), n_(decomposition.n_qubits()), layers_(layers),
      options_(options) {
  if (decomposition.empty()) throw InvalidParameter("local_cost: empty decomposition");
  if (encoder.n_qubits() != n_) throw InvalidParameter("local_cost: encoder and decomposition sizes differ");
  if (layers < 0) throw InvalidParameter("local_cost: negative layer count");
  if (options.shots && options.mode != CostMode::kHadamard)
    throw InvalidParameter("local_cost: shot sampling requires Hadamard mode");
  if (options.real_only || options.mode == CostMode::kExact)
    for (const auto& t : decomposition.terms())
      if (pauli::is_odd_y(t.string)) throw InvalidParameter("local_cost: real-only path needs even-Y terms");
  const std::size_t dim = std::size_t{1} << n_;
  z_sum_.assign(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x)
    z_sum_[x] = static_cast<double>(n_) - 2.0 * static_cast<double>(std::popcount(static_cast<std::uint64_t>(x)));
}

qsim::AnsatzConfig LocalCost::ansatz(const Vector& alpha) const {
  qsim::AnsatzConfig cfg{n_, layers_, alpha};
  cfg.validate();
  return cfg;
}

CostEvaluation LocalCost::evaluate(const Vector& alpha, std::uint64_t stream) const {
  CostEvaluation e = options_.mode == CostMode::kExact ? evaluate_exact(alpha) : evaluate_terms(alpha, stream);
  if (!(e.denominator > 0.0)) throw Error("local_cost: degenerate ansatz state, A|psi> vanishes");
  e.value = 0.5 - e.numerator / (2.0 * n_ * e.denominator);
  const auto t = static_cast<std::uint64_t>(decomposition_.size());
  const std::uint64_t tests = t * t * static_cast<std::uint64_t>(n_ + 1);
  if (options_.real_only || options_.mode == CostMode::kExact) {
    e.circuits_evaluated = tests;
    e.circuits_saved = tests;
  } else {
    e.circuits_evaluated = 2 * tests;
  }
  return e;
}

CostEvaluation LocalCost::evaluate_exact(const Vector& alpha) const {
  const Vector psi = qsim::ansatz_real(ansatz(alpha));
  Vector a_psi = Vector::Zero(psi.size());
  for (const auto& term : decomposition_.terms()) apply_real_pauli(term.string, term.coefficient, psi, a_psi);
  Vector phi = a_psi;
  encoder_.apply_real(std::span<double>(phi.data(), static_cast<std::size_t>(phi.size())), true);
  CostEvaluation e;
  double n_sum = 0.0;
  for (Eigen::Index x = 0; x < phi.size(); ++x) n_sum += z_sum_[static_cast<std::size_t>(x)] * phi(x) * phi(x);
  e.numerator = n_sum;
  e.denominator = a_psi.squaredNorm();
  return e;
}

CostEvaluation LocalCost::evaluate_terms(const Vector& alpha, std::uint64_t stream) const {
  const auto cfg = ansatz(alpha);
  const auto& terms = decomposition_.terms();
  const bool hadamard = options_.mode == CostMode::kHadamard;
  CostEvaluation e;
  double var_n = 0.0;
  double var_d = 0.0;
  std::uint64_t circuit = 0;

  // Each raw expectation: Hadamard test (exact or sampled) or direct product.
  auto measure = [&](const qsim::OperatorSequence& w, qsim::TestPart part, double* variance) {
    double value = 0.0;
    if (!hadamard) {
      value = qsim::direct_expectation(w, cfg, part);
    } else {
      std::optional<qsim::ShotMode> shots;
      if (options_.shots) shots = qsim::ShotMode{options_.shots->shots, mix(options_.shots->seed ^ mix(stream) ^ mix(circuit))};
      value = qsim::hadamard_test(w, cfg, part, shots);
      if (shots && variance) {
        const double exact = qsim::hadamard_test(w, cfg, part);
        *variance = std::max(0.0, 1.0 - exact * exact) / static_cast<double>(shots->shots);
      }
    }
    ++circuit;
    return value;
  };

  for (const auto& ti : terms)
    for (const auto& tip : terms) {
      const double cc = ti.coefficient * tip.coefficient;
      for (int j = 0; j < n_; ++j) {
        const auto w = qsim::delta_operator(ti.string, tip.string, encoder_, j);
        double var = 0.0;
        e.numerator += cc * measure(w, qsim::TestPart::kReal, &var);
        var_n += cc * cc * var;
        if (!options_.real_only) e.numerator_imag += cc * measure(w, qsim::TestPart::kImaginary, nullptr);
      }
      const auto w = qsim::beta_operator(ti.string, tip.string);
      double var = 0.0;
      e.denominator += cc * measure(w, qsim::TestPart::kReal, &var);
      var_d += cc * cc * var;
      if (!options_.real_only) e.denominator_imag += cc * measure(w, qsim::TestPart::kImaginary, nullptr);
    }
  if (options_.shots && e.denominator > 0.0) {
    const double scale = 1.0 / (2.0 * n_);
    const double d2 = e.denominator * e.denominator;
    e.standard_error = scale * std::sqrt(var_n / d2 + e.numerator * e.numerator * var_d / (d2 * d2));
  }
  return e;
}

Vector LocalCost::gradient(const Vector& alpha, std::uint64_t stream) const {
  const CostEvaluation base = evaluate(alpha, stream);
  const double n = base.numerator;
  const double d = base.denominator;
  Vector grad(alpha.size());
  Vector shifted = alpha;
  for (Eigen::Index k = 0; k < alpha.size(); ++k) {
    shifted(k) = alpha(k) + std::numbers::pi / 2;
    const CostEvaluation plus = evaluate(shifted, stream + 2 * static_cast<std::uint64_t>(k) + 1);
    shifted(k) = alpha(k) - std::numbers::pi / 2;
    const CostEvaluation minus = evaluate(shifted, stream + 2 * static_cast<std::uint64_t>(k) + 2);
    shifted(k) = alpha(k);
    const double dn = 0.5 * (plus.numerator - minus.numerator);
    const double dd = 0.5 * (plus.denominator - minus.denominator);
    grad(k) = -(dn * d - n * dd) / (2.0 * n_ * d * d);
  }
  return grad;
}

void LocalCost::write_term_tables(const Vector& alpha, std::ostream& delta_csv, std::ostream& beta_csv) const {
  const auto cfg = ansatz(alpha);
  delta_csv << "i,ip,j,delta\n";
  beta_csv << "i,ip,beta\n";
  char buf[32];
  for (const auto& ti : decomposition_.terms())
    for (const auto& tip : decomposition_.terms()) {
      for (int j = 0; j < n_; ++j) {
        std::snprintf(buf, sizeof buf, "%.15e",
                      qsim::direct_expectation(qsim::delta_operator(ti.string, tip.string, encoder_, j), cfg));
        delta_csv << ti.string.str() << ',' << tip.string.str() << ',' << j << ',' << buf << '\n';
      }
      std::snprintf(buf, sizeof buf, "%.15e", qsim::direct_expectation(qsim::beta_operator(ti.string, tip.string), cfg));
      beta_csv << ti.string.str() << ',' << tip.string.str() << ',' << buf << '\n';
    }
}

}  // namespace qemtp::vqls
