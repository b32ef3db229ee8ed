#pragma once

#include "qemtp/emtp/branch.hpp"

#include <string>
#include <variant>

namespace qemtp::emtp {

/// High for the first `duty` fraction of every period.
struct DutyCyclePwm {
  double frequency = 0.0;
  double duty = 0.5;
  double phase = 0.0;  ///< Fraction of a period added to t * f.
};

/// High while m sin(2 pi f_ref t + phase) exceeds a unit triangular carrier
/// that peaks at +1 when t * f_carrier is an integer.
struct SineTrianglePwm {
  double carrier_frequency = 0.0;
  double reference_frequency = 0.0;
  double modulation_index = 1.0;
  double phase_deg = 0.0;

  double carrier(double t) const;
  double reference(double t) const;
};

using PwmScheme = std::variant<DutyCyclePwm, SineTrianglePwm>;

void validate(const PwmScheme& scheme);

/// Gate level of the upper device at time t. Samples that land on an edge
/// within 1e-9 of a period count as past it, so t = k dt is robust to
/// rounding in k * dt.
bool pwm_gate_signal(double t, const PwmScheme& scheme);

/// State of a switch driven by `scheme`; an inverted switch is the exact
/// complement of the plain one.
SwitchState switch_state(double t, const PwmScheme& scheme, bool inverted);

struct GateSignal {
  std::string name;
  PwmScheme scheme;
};

}  // namespace qemtp::emtp
