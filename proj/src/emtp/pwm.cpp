#include "qemtp/emtp/pwm.hpp"

#include <cmath>
#include <numbers>

namespace qemtp::emtp {

namespace {

constexpr double kEdgeSlack = 1e-9;

// Fractional part of x, with values a hair below an integer rounded up to it.
double period_fraction(double x) {
  double f = x - std::floor(x + kEdgeSlack);
  return f < 0.0 ? 0.0 : f;
}

}  // namespace

double SineTrianglePwm::carrier(double t) const {
  const double x = period_fraction(t * carrier_frequency);
  return 4.0 * std::abs(x - 0.5) - 1.0;
}

double SineTrianglePwm::reference(double t) const {
  return modulation_index *
         std::sin(2.0 * std::numbers::pi * reference_frequency * t + phase_deg * std::numbers::pi / 180.0);
}

void validate(const PwmScheme& scheme) {
  if (const auto* d = std::get_if<DutyCyclePwm>(&scheme)) {
    if (!(d->frequency > 0.0)) throw InvalidParameter("pwm: frequency must be positive");
    if (!(d->duty > 0.0 && d->duty < 1.0)) throw InvalidParameter("pwm: duty must lie in (0, 1)");
    if (!std::isfinite(d->phase)) throw InvalidParameter("pwm: non-finite phase");
  } else {
    const auto& s = std::get<SineTrianglePwm>(scheme);
    if (!(s.carrier_frequency > 0.0) || !(s.reference_frequency > 0.0))
      throw InvalidParameter("pwm: carrier and reference frequencies must be positive");
    if (!(s.modulation_index > 0.0 && s.modulation_index <= 1.0))
      throw InvalidParameter("pwm: modulation index must lie in (0, 1]");
    if (!std::isfinite(s.phase_deg)) throw InvalidParameter("pwm: non-finite phase");
  }
}

bool pwm_gate_signal(double t, const PwmScheme& scheme) {
  validate(scheme);
  if (const auto* d = std::get_if<DutyCyclePwm>(&scheme))
    return period_fraction(t * d->frequency + d->phase) < d->duty - kEdgeSlack;
  const auto& s = std::get<SineTrianglePwm>(scheme);
  return s.reference(t) > s.carrier(t);
}

SwitchState switch_state(double t, const PwmScheme& scheme, bool inverted) {
  const bool high = pwm_gate_signal(t, scheme);
  return (high != inverted) ? SwitchState::kOn : SwitchState::kOff;
}

}  // namespace qemtp::emtp
