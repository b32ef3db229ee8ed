#pragma once

#include <optional>

#include "qemtp/emtp/config.hpp"
#include "qemtp/emtp/waveform.hpp"
#include "qemtp/vqls/solver.hpp"
#include "qemtp/vqls/step_solver.hpp"

namespace qemtp::app {

/// Compensation settings for a network run: eps, layers, seed, learning
/// rate and iteration cap from the [simulation] section. A shot count
/// selects sampled Hadamard tests, otherwise expectations are exact.
vqls::CompensationConfig compensation_config(const emtp::SimulationSettings& settings);

struct SimulationResult {
  emtp::Waveform waveform;
  double elapsed_s = 0.0;
  /// QEMTP engine only.
  std::optional<vqls::QemtpRunStats> stats;
  /// Nonzero Pauli terms of the extended admittance matrix, unscaled.
  std::size_t raw_terms = 0;
  /// Nonzero Pauli terms of the matrix handed to the variational solver.
  std::size_t mapped_terms = 0;
  int n_qubits = 0;
};

/// Runs the transient with the engine named in `config.simulation`.
SimulationResult simulate(const emtp::NetworkConfig& config);

}  // namespace qemtp::app
