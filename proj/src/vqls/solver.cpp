#include "qemtp/vqls/solver.hpp"

#include "qemtp/pauli/mlqc.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace qemtp::vqls {

void CompensationConfig::validate() const {
  if (!(eps > 0.0)) throw InvalidParameter("vqls: eps must be positive");
  if (max_rounds < 0) throw InvalidParameter("vqls: max_rounds must be >= 0");
  if (layers < 0) throw InvalidParameter("vqls: layers must be >= 0");
  optimizer.validate();
}

namespace {

// Ratio of extreme absolute eigenvalues of the symmetric part; infinite when singular.
double condition_number(const Matrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  const Vector ev = es.eigenvalues().cwiseAbs();
  const double lo = ev.minCoeff();
  return lo > 0.0 ? ev.maxCoeff() / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

Scaling parse_scaling(const std::string& name) {
  if (name == "none") return Scaling::kNone;
  if (name == "jacobi") return Scaling::kJacobi;
  if (name == "auto") return Scaling::kAuto;
  throw InvalidParameter("vqls: scaling must be 'none', 'jacobi' or 'auto', got '" + name + "'");
}

CircuitAccounting circuit_accounting(int n_qubits, std::uint64_t term_count) {
  if (n_qubits < 1) throw InvalidParameter("circuit_accounting: need at least one qubit");
  const auto n = static_cast<std::uint64_t>(n_qubits);
  const std::uint64_t t2 = term_count * term_count;
  CircuitAccounting a;
  a.real_only_count = n * t2 + t2;
  a.full_count = 2 * a.real_only_count;
  a.saved = n * t2;
  a.traditional = 2 * n * (std::uint64_t{1} << (4 * n));
  return a;
}

CircuitAccounting circuit_accounting(const pauli::PauliDecomposition& decomposition) {
  return circuit_accounting(decomposition.n_qubits(), decomposition.size());
}

VqlsSolver::VqlsSolver(const Matrix& g, CompensationConfig config) : config_(std::move(config)) {
  config_.validate();
  if (g.rows() != g.cols() || g.rows() == 0) throw InvalidParameter("vqls: matrix must be square and nonempty");
  original_dim_ = static_cast<int>(g.rows());
  g_tilde_ = embed::extend_matrix(g);
  n_qubits_ = embed::qubits_for(static_cast<std::size_t>(g.rows()));
  scale_ = Vector::Ones(g_tilde_.rows());
  if (config_.scaling != Scaling::kNone) {
    Vector jacobi = scale_;
    for (Eigen::Index k = 0; k < jacobi.size(); ++k) {
      const double d = std::abs(g_tilde_(k, k));
      if (d > 0.0) jacobi(k) = 1.0 / std::sqrt(d);
    }
    if (config_.scaling == Scaling::kJacobi ||
        condition_number(jacobi.asDiagonal() * g_tilde_ * jacobi.asDiagonal()) < condition_number(g_tilde_))
      scale_ = jacobi;
  }
  mapped_ = scale_.asDiagonal() * g_tilde_ * scale_.asDiagonal();
  mapped_ = 0.5 * (mapped_ + mapped_.transpose());
  pauli::MlqcOptions options;
  options.symmetric_filter = true;
  decomposition_ = pauli::mlqc_decompose(mapped_, options);
}

VqlsSolution VqlsSolver::solve(const Vector& i) {
  if (i.size() != original_dim_) throw InvalidParameter("vqls: right-hand side has the wrong length");
  if (!i.allFinite()) throw InvalidParameter("vqls: non-finite right-hand side");
  const Vector i_hat = embed::extend_vector(i, static_cast<std::size_t>(g_tilde_.rows()));
  VqlsSolution sol;
  sol.v_unit = Vector::Zero(g_tilde_.rows());
  sol.v_physical = Vector::Zero(original_dim_);
  if (i_hat.squaredNorm() == 0.0) return sol;

  const std::size_t p = qsim::AnsatzConfig::parameter_count(n_qubits_, config_.layers);
  Vector v = Vector::Zero(g_tilde_.rows());
  Vector r = i_hat;
  sol.residual_trace.push_back(r.norm());
  ++solves_;

  for (int round = 0; round <= config_.max_rounds && sol.residual_trace.back() > config_.eps; ++round) {
    const auto [unit, norm] = embed::normalize(Vector(scale_.cwiseProduct(r)));
    const qsim::AmplitudeEncoder encoder(unit);
    const LocalCost cost(decomposition_, encoder, config_.layers, config_.cost);

    OptimizerConfig opt = config_.optimizer;
    opt.seed = config_.optimizer.seed ^ (solves_ * 0x9e3779b97f4a7c15ULL) ^ static_cast<std::uint64_t>(round);
    std::optional<Vector> start;
    if (static_cast<std::size_t>(round) < warm_.size()) start = warm_[static_cast<std::size_t>(round)];
    else start = random_parameters(p, opt.seed);
    const OptimizeResult trained = optimize(cost, opt, start);
    if (static_cast<std::size_t>(round) < warm_.size()) warm_[static_cast<std::size_t>(round)] = trained.alpha;
    else warm_.push_back(trained.alpha);

    sol.iterations += trained.iterations;
    sol.circuits_evaluated += trained.circuits_evaluated;
    sol.circuits_saved += trained.circuits_saved;
    sol.cost_history.push_back(trained.cost);
    if (round == 0) sol.alpha_opt = trained.alpha;
    else ++sol.compensation_rounds;

    const Vector state = scale_.cwiseProduct(qsim::ansatz_real({n_qubits_, config_.layers, trained.alpha}));
    const double s = embed::recover_scale(state, g_tilde_, r);
    v += s * state;
    r = i_hat - g_tilde_ * v;
    sol.residual_trace.push_back(r.norm());
  }

  sol.residual = sol.residual_trace.back();
  sol.v_unit = v / v.norm();
  sol.v_physical = v.head(original_dim_);
  if (sol.residual > config_.eps) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "vqls: residual %.3e above eps %.3e after %d compensation rounds", sol.residual,
                  config_.eps, sol.compensation_rounds);
    throw ConvergenceError(buf, sol.residual_trace);
  }
  return sol;
}

VqlsSolution solve_with_compensation(const Matrix& g, const Vector& i, const CompensationConfig& config) {
  VqlsSolver solver(g, config);
  return solver.solve(i);
}

}  // namespace qemtp::vqls
