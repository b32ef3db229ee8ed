#include "qemtp/emtp/transient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qemtp::emtp {

void TransientConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("transient: dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidParameter("transient: t_end must be positive");
  if (t_end < dt * (1.0 - 1e-9)) throw InvalidParameter("transient: t_end shorter than one step");
}

std::size_t TransientConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(std::floor(t_end / dt + 1e-9)));
}

namespace {

struct BranchState {
  std::vector<double> voltage;
  std::vector<double> current;
};

std::string at_time(double t, const std::string& what) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t=%.9g s: ", t);
  return buf + what;
}

class Stepper {
 public:
  Stepper(const NetworkModel& network, double dt, StepSolver& solver)
      : net_(network), dt_(dt), solver_(solver),
        state_{std::vector<double>(network.branches().size(), 0.0), std::vector<double>(network.branches().size(), 0.0)},
        v_(Vector::Zero(network.node_count())) {}

  void set_initial(const TransientConfig& config) {
    for (const auto& [name, value] : config.initial_node_voltages) {
      const int node = net_.node_index(name);
      if (node == 0) throw InvalidParameter("transient: ground has no initial voltage");
      v_(node - 1) = value;
    }
    const auto& branches = net_.branches();
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const double u = node_voltage(branches[b].from_node) - node_voltage(branches[b].to_node);
      state_.voltage[b] = u;
      if (branches[b].kind == BranchKind::kResistor) state_.current[b] = u / branches[b].value;
    }
    for (const auto& [id, value] : config.initial_branch_currents) state_.current[net_.branch_index(id)] = value;
  }

  // Advances the branch state to time t; returns the solver's relative error.
  std::optional<double> advance(double t, Integrator integrator) {
    const auto& branches = net_.branches();
    const auto states = net_.switch_states(t);
    std::vector<NortonEquivalent> norton(branches.size());
    std::size_t next_switch = 0;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const Branch& br = branches[b];
      switch (br.kind) {
        case BranchKind::kResistor:
        case BranchKind::kInductor:
        case BranchKind::kCapacitor:
          norton[b] = discretize_branch(br, dt_, state_.voltage[b], state_.current[b], integrator);
          break;
        case BranchKind::kVoltageSource:
        case BranchKind::kCurrentSource:
          norton[b] = source_norton(br, t);
          break;
        case BranchKind::kSwitch:
          norton[b] = switch_norton(states[next_switch++], state_.voltage[b], state_.current[b], net_.fasm());
          break;
      }
    }
    Vector injection = Vector::Zero(net_.node_count());
    for (std::size_t b = 0; b < branches.size(); ++b) stamp_history(injection, branches[b], norton[b].history_current);

    StepOutcome out = solver_.solve(injection, t);
    v_ = std::move(out.voltages);
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const double u = node_voltage(branches[b].from_node) - node_voltage(branches[b].to_node);
      state_.voltage[b] = u;
      state_.current[b] = norton[b].conductance * u + norton[b].history_current;
    }
    return out.relative_error;
  }

  std::vector<double> sample(double rel_err) const {
    std::vector<double> row(v_.data(), v_.data() + v_.size());
    row.insert(row.end(), state_.current.begin(), state_.current.end());
    row.push_back(rel_err);
    return row;
  }

 private:
  double node_voltage(int node) const { return node == 0 ? 0.0 : v_(node - 1); }

  const NetworkModel& net_;
  double dt_;
  StepSolver& solver_;
  BranchState state_;
  Vector v_;
};

}  // namespace

Waveform run_transient(const NetworkModel& network, const TransientConfig& config, StepSolver& solver) {
  config.validate();
  std::vector<std::string> names;
  for (const auto& n : network.node_names()) names.push_back("v_" + n);
  for (const auto& b : network.branches()) names.push_back("i_" + b.id);
  names.push_back("rel_err");
  Waveform wave(names);

  const double dt = config.dt;
  solver.prepare(assemble_admittance(network, network.switch_states(0.0), dt));
  Stepper stepper(network, dt, solver);
  stepper.set_initial(config);
  wave.append(0.0, stepper.sample(0.0));

  const std::size_t steps = config.step_count();
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    double rel_err = 0.0;
    auto note = [&](std::optional<double> e) {
      if (e) rel_err = std::max(rel_err, *e);
    };
    try {
      if (k == 1 && config.startup_half_steps) {
        note(stepper.advance(0.5 * dt, Integrator::kBackwardEulerHalf));
        note(stepper.advance(t, Integrator::kBackwardEulerHalf));
      } else {
        note(stepper.advance(t, Integrator::kTrapezoidal));
      }
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(at_time(t, e.what()), e.residual_trace());
    } catch (const SolverError& e) {
      throw SolverError(at_time(t, e.what()), e.rcond());
    } catch (const InvalidParameter& e) {
      throw InvalidParameter(at_time(t, e.what()));
    } catch (const Error& e) {
      throw Error(at_time(t, e.what()));
    }
    wave.append(t, stepper.sample(rel_err));
  }
  return wave;
}

Waveform run_classical(const NetworkModel& network, const TransientConfig& config) {
  DirectSolver solver;
  return run_transient(network, config, solver);
}

}  // namespace qemtp::emtp
