#include "qemtp/emtp/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace qemtp::emtp {

std::vector<double> branch_voltage(const Waveform& w, const NetworkModel& network, const std::string& branch_id) {
  const Branch& b = network.branches().at(network.branch_index(branch_id));
  auto node_channel = [&](int node) -> const std::vector<double>* {
    return node == 0 ? nullptr : &w.channel("v_" + network.node_names().at(static_cast<std::size_t>(node - 1)));
  };
  const auto* from = node_channel(b.from_node);
  const auto* to = node_channel(b.to_node);
  std::vector<double> u(w.size(), 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = (from ? (*from)[k] : 0.0) - (to ? (*to)[k] : 0.0);
  return u;
}

std::vector<TurnOnEvent> turn_on_settling(const Waveform& w, const NetworkModel& network, const std::string& switch_id,
                                          double tolerance, std::size_t min_run) {
  const std::size_t branch = network.branch_index(switch_id);
  const auto& switches = network.switch_branches();
  const auto it = std::find(switches.begin(), switches.end(), branch);
  if (it == switches.end()) throw InvalidParameter("turn_on_settling: '" + switch_id + "' is not a switch");
  const auto slot = static_cast<std::size_t>(it - switches.begin());

  std::vector<bool> on(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) on[k] = network.switch_states(w.time()[k])[slot] == SwitchState::kOn;
  const std::vector<double> u = branch_voltage(w, network, switch_id);

  std::vector<TurnOnEvent> events;
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (!on[k] || on[k - 1]) continue;
    std::size_t end = k;
    while (end + 1 < w.size() && on[end + 1]) ++end;
    TurnOnEvent ev;
    ev.step = k;
    ev.run_length = end - k + 1;
    if (ev.run_length >= min_run) {
      // Latest sample whose second difference breaks the tolerance.
      std::optional<std::size_t> last_bad;
      for (std::size_t m = k + 2; m <= end; ++m)
        if (std::abs(u[m] - 2.0 * u[m - 1] + u[m - 2]) > tolerance) last_bad = m;
      ev.settle_steps = last_bad ? *last_bad + 1 - k : 2;
      if (*ev.settle_steps > ev.run_length - 1) ev.settle_steps.reset();
    }
    events.push_back(ev);
  }
  return events;
}

}  // namespace qemtp::emtp
