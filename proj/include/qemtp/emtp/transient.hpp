#pragma once

#include <map>
#include <string>

#include "qemtp/emtp/network.hpp"
#include "qemtp/emtp/solver.hpp"
#include "qemtp/emtp/waveform.hpp"

namespace qemtp::emtp {

struct TransientConfig {
  double dt = 0.0;
  double t_end = 0.0;
  /// Replace the first step by two backward Euler half steps, which damps the
  /// spurious oscillation trapezoidal integration shows after the t = 0
  /// source discontinuity.
  bool startup_half_steps = true;
  /// Optional state at t = 0, keyed by node name and branch id. Resistor
  /// currents follow from the node voltages; other unlisted quantities are 0.
  /// The caller is responsible for a KCL-consistent set.
  std::map<std::string, double> initial_node_voltages;
  std::map<std::string, double> initial_branch_currents;

  void validate() const;
  std::size_t step_count() const;
};

/// Fixed-step nodal simulation from the configured initial state (zero by
/// default). G is assembled once
/// and handed to `solver`; each step builds the injection from the sources
/// and branch histories, solves, and updates every branch. Channels are
/// v_<node>, i_<branch> and rel_err (0 where the solver reports none). Errors
/// raised inside a step are rethrown with the step time prepended.
Waveform run_transient(const NetworkModel& network, const TransientConfig& config, StepSolver& solver);

/// run_transient() with a DirectSolver.
Waveform run_classical(const NetworkModel& network, const TransientConfig& config);

}  // namespace qemtp::emtp
