// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Pass criterion numbers as arguments to
// run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qemtp/app/benchmark.hpp"
#include "qemtp/app/simulate.hpp"
#include "qemtp/emtp/analysis.hpp"
#include "qemtp/emtp/config.hpp"
#include "qemtp/emtp/transient.hpp"
#include "qemtp/pauli/accounting.hpp"
#include "qemtp/pauli/kronecker.hpp"
#include "qemtp/pauli/mlqc.hpp"
#include "qemtp/vqls/optimizer.hpp"
#include "qemtp/vqls/solver.hpp"
#include "qemtp/vqls/step_solver.hpp"

using namespace qemtp;

namespace {

// Records a named check and prints it under the current criterion.
class Checks {
 public:
  void expect(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::printf("    [%s] %s\n", ok ? "ok" : "FAILED", buf);
    std::fflush(stdout);
    pass_ = pass_ && ok;
  }
  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::printf("    %s\n", buf);
    std::fflush(stdout);
  }
  bool pass() const { return pass_; }

 private:
  bool pass_ = true;
};

std::string config_path(const char* name) { return std::string(QEMTP_SOURCE_DIR) + "/configs/" + name; }

double max_coefficient_difference(const pauli::PauliDecomposition& a, const pauli::PauliDecomposition& b) {
  std::set<std::uint64_t> strings;
  for (const auto& t : a.terms()) strings.insert(t.string.index());
  for (const auto& t : b.terms()) strings.insert(t.string.index());
  double worst = 0.0;
  for (std::uint64_t s : strings) {
    const pauli::PauliString p(a.n_qubits(), s);
    worst = std::max(worst, std::abs(a.coefficient(p) - b.coefficient(p)));
  }
  return worst;
}

bool criterion_1(Checks& c) {
  double worst_diff = 0.0, worst_mlqc = 0.0, worst_naive = 0.0;
  for (std::size_t dim = 4; dim <= 256; dim *= 2) {
    double dim_diff = 0.0, dim_err = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Matrix g = pauli::random_symmetric(dim, 1000 * dim + seed);
      const auto naive = pauli::naive_pauli_decompose(g);
      const auto mlqc = pauli::mlqc_decompose(g);
      const double diff = max_coefficient_difference(naive, mlqc);
      const double e_m = pauli::mapping_error(g, mlqc);
      const double e_n = pauli::mapping_error(g, naive);
      dim_diff = std::max(dim_diff, diff);
      dim_err = std::max({dim_err, e_m, e_n});
      worst_mlqc = std::max(worst_mlqc, e_m);
      worst_naive = std::max(worst_naive, e_n);
    }
    worst_diff = std::max(worst_diff, dim_diff);
    c.note("dim %4zu: max |c_mlqc - c_naive| = %.2e, max reconstruction error = %.2e", dim, dim_diff, dim_err);
  }
  c.expect(worst_diff <= 1e-12, "max coefficient difference %.2e <= 1e-12", worst_diff);
  c.expect(worst_mlqc <= 1e-13, "MLQC reconstruction error %.2e <= 1e-13", worst_mlqc);
  c.expect(worst_naive <= 1e-13, "naive reconstruction error %.2e <= 1e-13", worst_naive);
  return c.pass();
}

bool criterion_2(Checks& c) {
  std::vector<app::BenchMapRow> rows;
  app::BenchMapOptions small;
  small.dims = {64, 128, 256};
  small.repeats = 3;
  for (const auto& r : app::bench_map(small)) rows.push_back(r);
  app::BenchMapOptions large;
  large.dims = {512};
  large.repeats = 1;
  for (const auto& r : app::bench_map(large)) rows.push_back(r);

  std::vector<double> speedups;
  for (const auto& r : rows) {
    const double s = r.naive_median_s / r.mlqc_median_s;
    speedups.push_back(s);
    c.note("dim %4zu: MLQC %.4f s, naive %.4f s (medians), speedup %.2f, errors %.1e / %.1e", r.dim, r.mlqc_median_s,
           r.naive_median_s, s, r.mlqc_error, r.naive_error);
    c.expect(r.mlqc_median_s <= r.naive_median_s, "dim %zu: MLQC time <= naive time", r.dim);
  }
  c.expect(speedups[2] >= 1.5, "speedup at dim 256 = %.2f >= 1.5", speedups[2]);
  bool monotone = true;
  for (std::size_t k = 1; k < speedups.size(); ++k) monotone = monotone && speedups[k] >= speedups[k - 1];
  c.expect(monotone, "speedup non-decreasing from dim 64 to 512");
  return c.pass();
}

bool criterion_3(Checks& c) {
  double worst_odd = 0.0;
  bool counts_ok = true;
  for (std::size_t dim = 4; dim <= 64; dim *= 2) {
    const int n = exact_log2(dim);
    const auto [lo, hi] = pauli::effective_basis_bounds(n);
    std::uint64_t min_count = ~0ull, max_count = 0;
    double dim_odd = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Matrix g = pauli::random_symmetric(dim, 7000 * dim + seed);
      const ComplexVector all = pauli::dense_reference_coefficients(g.cast<Complex>());
      for (Eigen::Index k = 0; k < all.size(); ++k)
        if (pauli::is_odd_y(pauli::PauliString(n, static_cast<std::uint64_t>(k))))
          dim_odd = std::max(dim_odd, std::abs(all(k)));
      pauli::DecomposeOptions unfiltered;
      unfiltered.symmetric_filter = false;
      const std::uint64_t count = pauli::naive_pauli_decompose(g, unfiltered).size();
      min_count = std::min(min_count, count);
      max_count = std::max(max_count, count);
      counts_ok = counts_ok && count >= lo && count <= hi;
    }
    worst_odd = std::max(worst_odd, dim_odd);
    c.note("dim %2zu: max |c_odd-Y| = %.2e, nonzero terms in [%llu, %llu], bounds [%llu, %llu]", dim, dim_odd,
           static_cast<unsigned long long>(min_count), static_cast<unsigned long long>(max_count),
           static_cast<unsigned long long>(lo), static_cast<unsigned long long>(hi));
  }
  c.expect(worst_odd <= 1e-14, "every odd-Y coefficient %.2e <= 1e-14", worst_odd);
  c.expect(counts_ok, "nonzero term counts within the effective basis bounds");
  return c.pass();
}

bool criterion_4(Checks& c) {
  const auto rows = app::r_sweep(512, {}, 4);
  double worst_gap = 0.0;
  for (const auto& r : rows) worst_gap = std::max(worst_gap, std::abs(r.error - r.tail_error));
  for (const auto& r : rows)
    if (r.rank <= 4 || r.rank % 32 == 0 || r.rank == static_cast<int>(rows.size()))
      c.note("R = %3d: error %.6e, tail norm %.6e, %.3f s", r.rank, r.error, r.tail_error, r.time_s);
  c.expect(rows.front().error >= 0.3 && rows.front().error <= 0.7, "R = 1 error %.4f in [0.3, 0.7]",
           rows.front().error);
  c.expect(worst_gap <= 1e-12, "error equals tail norm within %.2e <= 1e-12 at all %zu ranks", worst_gap, rows.size());
  return c.pass();
}

Matrix well_conditioned_symmetric(std::uint64_t seed, double kappa) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> mag(1.0, kappa);
  Matrix a(4, 4);
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = normal(rng);
  const Matrix q = Eigen::HouseholderQR<Matrix>(a).householderQ();
  Vector eig(4);
  eig << 1.0, kappa, mag(rng), mag(rng);
  for (Eigen::Index k = 0; k < 4; ++k)
    if (rng() & 1) eig(k) = -eig(k);
  return q * eig.asDiagonal() * q.transpose();
}

bool criterion_5(Checks& c) {
  double worst_residual = 0.0, worst_grad = 0.0, worst_kappa = 0.0;
  int worst_rounds = 0, indefinite = 0;
  bool all_converged = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix g = well_conditioned_symmetric(seed, 50.0);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(g);
    const Vector ev = es.eigenvalues().cwiseAbs();
    worst_kappa = std::max(worst_kappa, ev.maxCoeff() / ev.minCoeff());
    if (es.eigenvalues().minCoeff() < 0.0) ++indefinite;
    std::mt19937_64 rng(seed + 77);
    std::normal_distribution<double> normal;
    Vector i(4);
    for (Eigen::Index k = 0; k < 4; ++k) i(k) = normal(rng);

    vqls::CompensationConfig cfg;
    cfg.eps = 1e-7;
    cfg.max_rounds = 10;
    cfg.optimizer.seed = seed;
    try {
      const auto s = vqls::solve_with_compensation(g, i, cfg);
      worst_residual = std::max(worst_residual, (g * s.v_physical - i).norm());
      worst_rounds = std::max(worst_rounds, s.compensation_rounds);
    } catch (const ConvergenceError& e) {
      all_converged = false;
      c.note("seed %llu: %s", static_cast<unsigned long long>(seed), e.what());
    }

    const auto d = pauli::naive_pauli_decompose(g);
    const qsim::AmplitudeEncoder enc(i.normalized());
    const vqls::LocalCost cost(d, enc, 3);
    const Vector alpha = vqls::random_parameters(cost.parameter_count(), seed + 300);
    const Vector grad = cost.gradient(alpha);
    const double h = 1e-5;
    for (Eigen::Index k = 0; k < alpha.size(); ++k) {
      Vector up = alpha, down = alpha;
      up(k) += h;
      down(k) -= h;
      const double fd = (cost.evaluate(up).value - cost.evaluate(down).value) / (2.0 * h);
      worst_grad = std::max(worst_grad, std::abs(fd - grad(k)));
    }
  }
  c.note("20 systems, largest condition number %.1f, %d indefinite", worst_kappa, indefinite);
  c.expect(all_converged, "every system converged within 10 compensation rounds (max used %d)", worst_rounds);
  c.expect(worst_residual <= 1e-7, "max ||G v - i|| = %.2e <= 1e-7", worst_residual);
  c.expect(worst_grad <= 1e-6, "max |parameter shift - finite difference| = %.2e <= 1e-6", worst_grad);
  return c.pass();
}

struct NetworkRun {
  emtp::NetworkConfig config;
  app::SimulationResult qemtp;
  emtp::Waveform classical;
};

NetworkRun run_network(const char* file) {
  NetworkRun r{emtp::load_network_config(config_path(file)), {}, {}};
  r.config.simulation.engine = "qemtp";
  r.qemtp = app::simulate(r.config);
  emtp::TransientConfig tc;
  tc.dt = r.config.simulation.dt;
  tc.t_end = r.config.simulation.t_end;
  r.classical = emtp::run_classical(r.config.network, tc);
  return r;
}

// max over samples from `first` of ||v_q - v_c|| / ||v_c|| over node voltages.
double trajectory_error(const NetworkRun& r, std::size_t first) {
  double worst = 0.0;
  for (std::size_t k = first; k < r.classical.size(); ++k) {
    double diff = 0.0, ref = 0.0;
    for (const auto& name : r.config.network.node_names()) {
      const double q = r.qemtp.waveform.channel("v_" + name)[k];
      const double c = r.classical.channel("v_" + name)[k];
      diff += (q - c) * (q - c);
      ref += c * c;
    }
    if (ref > 0.0) worst = std::max(worst, std::sqrt(diff / ref));
  }
  return worst;
}

const NetworkRun& buck_run() {
  static const NetworkRun run = run_network("buck.cfg");
  return run;
}

bool criterion_6(Checks& c) {
  const NetworkRun& r = buck_run();
  const auto& sim = r.config.simulation;
  c.note("dt %.3g s, t_end %.3g s, eps %.1e, %d layers, %s expectations, %.1f s wall", sim.dt, sim.t_end, sim.eps,
         sim.layers, sim.shots ? "sampled" : "exact", r.qemtp.elapsed_s);
  const auto& err = r.qemtp.waveform.channel("rel_err");
  const double max_err = *std::max_element(err.begin(), err.end());
  c.expect(r.qemtp.stats->classical_steps == 0, "all %zu steps solved variationally (%zu solves)", err.size() - 1,
           r.qemtp.stats->vqls_steps);
  c.expect(max_err <= 1e-7, "max per-step relative error %.2e <= 1e-7", max_err);

  // Switching instants: steps where any switch changes state.
  double switching_max = 0.0;
  std::size_t switching = 0;
  for (std::size_t k = 1; k < err.size(); ++k)
    if (r.config.network.switch_states(r.qemtp.waveform.time()[k]) !=
        r.config.network.switch_states(r.qemtp.waveform.time()[k - 1])) {
      switching_max = std::max(switching_max, err[k]);
      ++switching;
    }
  c.expect(switching_max <= 1e-7, "max error at the %zu switching instants %.2e <= 1e-7", switching, switching_max);

  // No monotone growth: the series is not non-decreasing and its last
  // quarter stays within a decade of its first quarter.
  const std::size_t quarter = (err.size() - 1) / 4;
  const double first_q = *std::max_element(err.begin() + 1, err.begin() + 1 + quarter);
  const double last_q = *std::max_element(err.end() - quarter, err.end());
  bool non_decreasing = true;
  for (std::size_t k = 2; k < err.size(); ++k) non_decreasing = non_decreasing && err[k] >= err[k - 1];
  c.expect(!non_decreasing && last_q <= 10.0 * first_q,
           "no error growth: max over first quarter %.2e, last quarter %.2e", first_q, last_q);

  const double traj = trajectory_error(r, 1);
  c.expect(traj <= 1e-7, "trajectory vs an independent classical run %.2e <= 1e-7", traj);

  const double vin = 50.0;
  for (const char* sw : {"S1", "S2"}) {
    const auto events = emtp::turn_on_settling(r.qemtp.waveform, r.config.network, sw, 0.01 * vin);
    std::size_t judged = 0, worst = 0;
    bool ok = true;
    for (const auto& e : events) {
      if (e.run_length < 5) continue;
      ++judged;
      ok = ok && e.settle_steps.has_value();
      if (e.settle_steps) worst = std::max(worst, *e.settle_steps);
    }
    if (judged == 0) {
      c.note("%s: %zu turn-on events, every on-interval shorter than 5 steps", sw, events.size());
      continue;
    }
    c.expect(ok && worst <= 5, "%s: FASM transient settles within %zu <= 5 steps over %zu turn-on events", sw, worst,
             judged);
  }
  return c.pass();
}

bool criterion_7(Checks& c) {
  const auto a8 = vqls::circuit_accounting(2, 8);
  const auto a30 = vqls::circuit_accounting(3, 30);
  c.expect(a8.saved == 128, "n = 2, 8 terms: %llu circuits saved per evaluation", static_cast<unsigned long long>(a8.saved));
  c.expect(a30.saved == 2700, "n = 3, 30 terms: %llu circuits saved per evaluation",
           static_cast<unsigned long long>(a30.saved));
  c.expect(pauli::circuits_reduced(2, 8) == 128 && pauli::circuits_reduced(3, 30) == 2700,
           "circuits_reduced agrees with the accounting");

  const NetworkRun& r = buck_run();
  const auto& st = *r.qemtp.stats;
  const std::uint64_t per_eval = pauli::circuits_reduced(st.n_qubits, st.term_count);
  c.note("Buck: n = %d, nonzero terms %zu raw / %zu mapped, %llu saved per evaluation", r.qemtp.n_qubits,
         r.qemtp.raw_terms, r.qemtp.mapped_terms, static_cast<unsigned long long>(per_eval));
  c.note("Buck: %zu steps, %llu iterations (%.1f per step), %llu circuits saved in total",
         st.vqls_steps, static_cast<unsigned long long>(st.iterations),
         static_cast<double>(st.iterations) / static_cast<double>(st.vqls_steps),
         static_cast<unsigned long long>(st.circuits_saved));
  c.expect(st.term_count == r.qemtp.mapped_terms, "run statistics use the mapped term count");
  c.expect(st.circuits_saved == st.iterations * per_eval, "cumulative saving equals iterations x per-evaluation saving");
  return c.pass();
}

bool criterion_8(Checks& c) {
  const NetworkRun r = run_network("bridge3ph.cfg");
  const auto& sim = r.config.simulation;
  const auto& st = *r.qemtp.stats;
  c.note("window %.4g..%.4g s at dt %.3g s, eps %.1e, %d layers, %.1f s wall", sim.qemtp_start, sim.t_end, sim.dt,
         sim.eps, sim.layers, r.qemtp.elapsed_s);
  c.note("%zu variational steps, %llu iterations, max %d compensation rounds per step", st.vqls_steps,
         static_cast<unsigned long long>(st.iterations), st.max_compensation_rounds);
  c.expect(std::abs(static_cast<double>(st.vqls_steps) * sim.dt - (sim.t_end - sim.qemtp_start)) < 1.5 * sim.dt,
           "window covers %.3g s", static_cast<double>(st.vqls_steps) * sim.dt);
  c.expect(st.max_relative_error <= 1e-4, "max per-step relative error %.2e <= 1e-4", st.max_relative_error);
  c.expect(st.max_relative_error <= 1e-6, "observed error %.2e <= 1e-6", st.max_relative_error);
  std::size_t first = 0;
  while (first < r.classical.size() && r.classical.time()[first] < sim.qemtp_start - 0.5 * sim.dt) ++first;
  const double traj = trajectory_error(r, first);
  c.expect(traj <= 1e-4, "trajectory vs an independent classical run %.2e <= 1e-4", traj);
  return c.pass();
}

bool criterion_9(Checks& c) {
  Matrix g(4, 4);
  g << 3.0, -1.0, 0.0, 0.5, -1.0, 2.5, -0.5, 0.0, 0.0, -0.5, 2.0, -1.0, 0.5, 0.0, -1.0, 3.0;
  Vector i(4);
  i << 1.0, -0.5, 0.25, 2.0;
  const auto d = pauli::naive_pauli_decompose(g);
  const qsim::AmplitudeEncoder enc(i.normalized());
  const Vector alpha = vqls::random_parameters(qsim::AnsatzConfig::parameter_count(2, 3), 99);
  const double exact = vqls::LocalCost(d, enc, 3).evaluate(alpha).value;
  int within = 0;
  double sigma = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    vqls::CostOptions opts;
    opts.mode = vqls::CostMode::kHadamard;
    opts.shots = qsim::ShotMode{1000000, seed};
    const auto e = vqls::LocalCost(d, enc, 3, opts).evaluate(alpha);
    sigma = e.standard_error;
    if (std::abs(e.value - exact) <= 3.0 * e.standard_error) ++within;
  }
  c.note("%zu terms, exact cost %.6f, binomial sigma %.2e at 1e6 shots", d.size(), exact, sigma);
  c.expect(within >= 95, "%d of 100 seeds within 3 sigma (>= 95 required)", within);
  return c.pass();
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<bool(Checks&)>>> criteria{
      {"MLQC and naive mapping agree", criterion_1},
      {"MLQC speedup trend", criterion_2},
      {"Y-even principle", criterion_3},
      {"Kronecker rank sweep", criterion_4},
      {"VQLS correctness", criterion_5},
      {"Buck converter case", criterion_6},
      {"circuit accounting", criterion_7},
      {"three-phase bridge case", criterion_8},
      {"shot-noise sanity", criterion_9},
  };
  std::set<int> selected;
  for (int a = 1; a < argc; ++a) selected.insert(std::atoi(argv[a]));

  std::vector<std::string> lines;
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    std::printf("criterion %d: %s\n", id, criteria[k].first);
    std::fflush(stdout);
    Checks checks;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[k].second(checks);
    } catch (const std::exception& e) {
      std::printf("    [FAILED] exception: %s\n", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s  criterion %d: %s (%.1f s)", ok ? "PASS" : "FAIL", id, criteria[k].first, secs);
    std::printf("%s\n\n", buf);
    lines.emplace_back(buf);
    all = all && ok;
  }
  std::printf("summary\n");
  for (const auto& l : lines) std::printf("%s\n", l.c_str());
  return all ? 0 : 1;
}
