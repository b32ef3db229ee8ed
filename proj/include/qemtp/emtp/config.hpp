#pragma once

#include "qemtp/emtp/network.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qemtp::emtp {

/// Values of the [simulation] section.
struct SimulationSettings {
  double dt = 0.0;
  double t_end = 0.0;
  std::string engine = "classical";  ///< classical | qemtp
  double eps = 1e-7;
  int layers = 3;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> shots;  ///< empty means exact expectations
  /// With the qemtp engine, steps before this time are solved classically.
  double qemtp_start = 0.0;
  double learning_rate = 0.1;
  int max_iterations = 10000;
};

struct NetworkConfig {
  NetworkModel network;
  SimulationSettings simulation;
  /// Every `key value` pair as read, for run metadata.
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Parses the sectioned network format:
///
///   [nodes]       names, whitespace separated; 0 and gnd denote ground
///   [branches]    <id> R|L|C <from> <to> <value>
///   [sources]     <id> V|I <from> <to> dc <value> | sine <peak> <hz> <deg>  [r=<ohms>]
///   [switches]    gate <name> duty <hz> <duty> [<phase>]
///                 gate <name> sine_triangle <carrier_hz> <ref_hz> <index> <deg>
///                 <id> <from> <to> <gate> [inverted]
///                 y_sw <siemens> | y_sw lc <inductor_id> <capacitor_id>
///                 fasm <alpha_on> <beta_on> <alpha_off> <beta_off>
///   [simulation]  <key> = <value>
///
/// Comments start with # or ;. Values are decimal SI. Throws ParseError with
/// the offending line number.
NetworkConfig parse_network_config(std::istream& in);
NetworkConfig load_network_config(const std::string& path);

/// Default series resistance of a voltage source (ohms).
inline constexpr double kDefaultSourceResistance = 1e-3;

}  // namespace qemtp::emtp
