#include "qemtp/emtp/branch.hpp"

#include <cmath>
#include <numbers>

namespace qemtp::emtp {

double SourceFunction::operator()(double t) const {
  if (shape == Shape::kDc) return amplitude;
  return amplitude * std::sin(2.0 * std::numbers::pi * frequency * t + phase_deg * std::numbers::pi / 180.0);
}

const char* to_string(BranchKind kind) {
  switch (kind) {
    case BranchKind::kResistor: return "R";
    case BranchKind::kInductor: return "L";
    case BranchKind::kCapacitor: return "C";
    case BranchKind::kVoltageSource: return "V";
    case BranchKind::kCurrentSource: return "I";
    case BranchKind::kSwitch: return "S";
  }
  return "?";
}

void Branch::validate() const {
  const std::string name = id.empty() ? std::string("branch") : id;
  if (from_node < 0 || to_node < 0) throw InvalidParameter(name + ": negative node index");
  if (from_node == to_node) throw InvalidParameter(name + ": both terminals on node " + std::to_string(from_node));
  switch (kind) {
    case BranchKind::kResistor:
    case BranchKind::kInductor:
    case BranchKind::kCapacitor:
    case BranchKind::kVoltageSource:
      if (!(value > 0.0) || !std::isfinite(value)) throw InvalidParameter(name + ": element value must be positive");
      break;
    case BranchKind::kCurrentSource:
      break;
    case BranchKind::kSwitch:
      if (gate.empty()) throw InvalidParameter(name + ": switch without a gate signal");
      break;
  }
  if ((kind == BranchKind::kVoltageSource || kind == BranchKind::kCurrentSource) &&
      (!std::isfinite(source.amplitude) || !std::isfinite(source.frequency) || source.frequency < 0.0))
    throw InvalidParameter(name + ": invalid source function");
}

NortonEquivalent discretize_branch(const Branch& branch, double dt, double prev_voltage, double prev_current,
                                   Integrator integrator) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("discretize_branch: dt must be positive");
  if (!(branch.value > 0.0) || !std::isfinite(branch.value))
    throw InvalidParameter("discretize_branch: element value must be positive");
  const bool trapezoidal = integrator == Integrator::kTrapezoidal;
  switch (branch.kind) {
    case BranchKind::kResistor:
      return {1.0 / branch.value, 0.0};
    case BranchKind::kInductor: {
      const double g = dt / (2.0 * branch.value);
      return {g, trapezoidal ? prev_current + g * prev_voltage : prev_current};
    }
    case BranchKind::kCapacitor: {
      const double g = 2.0 * branch.value / dt;
      return {g, trapezoidal ? -prev_current - g * prev_voltage : -g * prev_voltage};
    }
    default:
      throw InvalidParameter("discretize_branch: only R, L and C branches have companion models");
  }
}

NortonEquivalent source_norton(const Branch& branch, double t) {
  if (branch.kind == BranchKind::kVoltageSource) {
    const double g = 1.0 / branch.value;
    return {g, -g * branch.source(t)};
  }
  if (branch.kind == BranchKind::kCurrentSource) return {0.0, branch.source(t)};
  throw InvalidParameter("source_norton: not a source branch");
}

FasmParams FasmParams::table_one(double y_sw) {
  FasmParams p;
  p.y_sw = y_sw;
  return p;
}

double FasmParams::lc_admittance(double inductance, double capacitance) {
  if (!(inductance > 0.0) || !(capacitance > 0.0)) throw InvalidParameter("fasm: L and C must be positive");
  return std::sqrt(capacitance / inductance);
}

void FasmParams::validate() const {
  if (beta_on != -1.0) throw InvalidParameter("fasm: beta_on must equal -1");
  if (alpha_off != 1.0) throw InvalidParameter("fasm: alpha_off must equal 1");
  if (alpha_on == 1.0) throw InvalidParameter("fasm: alpha_on must differ from 1");
  if (beta_off == -1.0) throw InvalidParameter("fasm: beta_off must differ from -1");
  if (!std::isfinite(alpha_on) || !std::isfinite(beta_off)) throw InvalidParameter("fasm: non-finite coefficient");
  if (!(y_sw > 0.0) || !std::isfinite(y_sw)) throw InvalidParameter("fasm: y_sw must be positive");
}

double fasm_history_current(SwitchState state, double prev_voltage, double prev_current, const FasmParams& params) {
  params.validate();
  if (state == SwitchState::kOn) return params.alpha_on * params.y_sw * prev_voltage + params.beta_on * prev_current;
  return params.alpha_off * params.y_sw * prev_voltage + params.beta_off * prev_current;
}

NortonEquivalent switch_norton(SwitchState state, double prev_voltage, double prev_current, const FasmParams& params) {
  return {params.y_sw, -fasm_history_current(state, prev_voltage, prev_current, params)};
}

}  // namespace qemtp::emtp
