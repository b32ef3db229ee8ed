#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qemtp/emtp/network.hpp"
#include "qemtp/emtp/waveform.hpp"

namespace qemtp::emtp {

/// One turn-on of a switch and how long its voltage took to settle.
struct TurnOnEvent {
  std::size_t step = 0;        ///< first sample in the on state
  std::size_t run_length = 0;  ///< samples until the switch turns off again
  /// Steps after `step` from which |u[m] - 2 u[m-1] + u[m-2]| <= tolerance
  /// holds for every remaining sample of the run. Empty when the run is
  /// shorter than `min_run` or never settles.
  std::optional<std::size_t> settle_steps;
};

/// Branch voltage u = v(from) - v(to) of `branch_id` over the waveform.
std::vector<double> branch_voltage(const Waveform& w, const NetworkModel& network, const std::string& branch_id);

/// Settling of the branch voltage of switch `switch_id` after each turn-on.
/// The second difference removes the linear ramp an inductor current
/// imposes on a conducting switch, so what remains is the FASM transient.
std::vector<TurnOnEvent> turn_on_settling(const Waveform& w, const NetworkModel& network, const std::string& switch_id,
                                          double tolerance, std::size_t min_run = 5);

}  // namespace qemtp::emtp
