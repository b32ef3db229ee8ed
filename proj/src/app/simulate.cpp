#include "qemtp/app/simulate.hpp"

#include <chrono>

#include "qemtp/embed/extended_system.hpp"
#include "qemtp/emtp/network.hpp"
#include "qemtp/emtp/transient.hpp"

namespace qemtp::app {

vqls::CompensationConfig compensation_config(const emtp::SimulationSettings& s) {
  vqls::CompensationConfig c;
  c.eps = s.eps;
  c.layers = s.layers;
  c.optimizer.seed = s.seed;
  c.optimizer.learning_rate = s.learning_rate;
  c.optimizer.max_iterations = s.max_iterations;
  if (s.shots) {
    c.cost.mode = vqls::CostMode::kHadamard;
    c.cost.shots = qsim::ShotMode{*s.shots, s.seed};
  }
  c.validate();
  return c;
}

SimulationResult simulate(const emtp::NetworkConfig& config) {
  const emtp::SimulationSettings& s = config.simulation;
  emtp::TransientConfig tc;
  tc.dt = s.dt;
  tc.t_end = s.t_end;
  tc.validate();

  SimulationResult out;
  const Matrix g = emtp::assemble_admittance(config.network, config.network.switch_states(0.0), s.dt);
  const Matrix g_tilde = embed::extend_matrix(g);
  out.n_qubits = embed::qubits_for(static_cast<std::size_t>(g.rows()));
  out.raw_terms = pauli::naive_pauli_decompose(g_tilde).size();

  const auto start = std::chrono::steady_clock::now();
  if (s.engine == "classical") {
    out.waveform = emtp::run_classical(config.network, tc);
    out.mapped_terms = out.raw_terms;
  } else if (s.engine == "qemtp") {
    vqls::QemtpStepSolver solver(compensation_config(s), s.qemtp_start);
    out.waveform = emtp::run_transient(config.network, tc, solver);
    out.stats = solver.stats();
    out.mapped_terms = solver.stats().term_count;
  } else {
    throw InvalidParameter("simulate: unknown engine '" + s.engine + "'");
  }
  out.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace qemtp::app
