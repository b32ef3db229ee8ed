#pragma once

#include "qemtp/common.hpp"

#include <string>

namespace qemtp::emtp {

/// Time function of an independent source: offset + amplitude * sin(2 pi f t + phase)
/// for kSine, the constant `amplitude` for kDc.
struct SourceFunction {
  enum class Shape { kDc, kSine };
  Shape shape = Shape::kDc;
  double amplitude = 0.0;
  double frequency = 0.0;  ///< Hz
  double phase_deg = 0.0;

  static SourceFunction dc(double value) { return {Shape::kDc, value, 0.0, 0.0}; }
  static SourceFunction sine(double peak, double frequency, double phase_deg) {
    return {Shape::kSine, peak, frequency, phase_deg};
  }
  double operator()(double t) const;
};

enum class BranchKind { kResistor, kInductor, kCapacitor, kVoltageSource, kCurrentSource, kSwitch };

const char* to_string(BranchKind kind);

/// Two-terminal element between from_node and to_node (0 is ground).
///
/// Branch voltage is u = v(from) - v(to) and branch current i flows from
/// from_node to to_node through the element. Every element is reduced to
/// i = G u + I_h, so I_h is drawn out of from_node and delivered to to_node.
struct Branch {
  std::string id;
  BranchKind kind = BranchKind::kResistor;
  int from_node = 0;
  int to_node = 0;
  /// Ohms, henries or farads; series resistance for a voltage source.
  double value = 0.0;
  /// Volts across (from, to) for kVoltageSource, amperes from->to for kCurrentSource.
  SourceFunction source;
  /// Gate signal name, switches only.
  std::string gate;
  /// Switch conducts when the gate is low (lower device of a complementary pair).
  bool inverted = false;

  void validate() const;
};

/// Parallel conductance and history current of a discretized branch.
struct NortonEquivalent {
  double conductance = 0.0;
  double history_current = 0.0;
};

enum class Integrator {
  kTrapezoidal,
  /// Backward Euler over dt/2. Keeps the trapezoidal conductance, so two of
  /// these steps can replace one trapezoidal step without restamping.
  kBackwardEulerHalf,
};

/// Companion model of an R, L or C branch for a step of length dt, given the
/// branch voltage and current at the previous step.
NortonEquivalent discretize_branch(const Branch& branch, double dt, double prev_voltage, double prev_current,
                                   Integrator integrator = Integrator::kTrapezoidal);

/// Norton form of a source branch at time t.
NortonEquivalent source_norton(const Branch& branch, double t);

/// Damping coefficients of the fixed admittance switch model.
struct FasmParams {
  double alpha_on = -1.0 - 1.4142135623730951;
  double beta_on = -1.0;
  double alpha_off = 1.0;
  double beta_off = 1.0 - 1.4142135623730951;
  double y_sw = 1.0;

  /// Shortest-transient parameter set with the given switch admittance.
  static FasmParams table_one(double y_sw);
  /// y_sw = sqrt(C / L).
  static double lc_admittance(double inductance, double capacitance);

  /// beta_on = -1 and alpha_off = 1 exactly, alpha_on != 1, beta_off != -1, y_sw > 0.
  void validate() const;
};

enum class SwitchState { kOff, kOn };

/// I_h = alpha Y_sw U(t - dt) + beta I(t - dt) with the (alpha, beta) pair of
/// the given state. The switch obeys i = Y_sw u - I_h.
double fasm_history_current(SwitchState state, double prev_voltage, double prev_current, const FasmParams& params);

/// The switch as i = G u + I_h in the common branch convention.
NortonEquivalent switch_norton(SwitchState state, double prev_voltage, double prev_current, const FasmParams& params);

}  // namespace qemtp::emtp
