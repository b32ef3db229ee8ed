#pragma once

#include "qemtp/emtp/branch.hpp"
#include "qemtp/emtp/pwm.hpp"

#include <string>
#include <vector>

namespace qemtp::emtp {

/// Immutable circuit description. Node 0 is ground; nodes 1..N carry the
/// names given in `node_names` (index k - 1 for node k).
class NetworkModel {
 public:
  NetworkModel(std::vector<std::string> node_names, std::vector<Branch> branches, std::vector<GateSignal> gates = {},
               FasmParams fasm = {});

  int node_count() const noexcept { return static_cast<int>(node_names_.size()); }
  const std::vector<std::string>& node_names() const noexcept { return node_names_; }
  const std::vector<Branch>& branches() const noexcept { return branches_; }
  const std::vector<GateSignal>& gates() const noexcept { return gates_; }
  const FasmParams& fasm() const noexcept { return fasm_; }

  /// Index of the named node; "0" and "gnd" are ground.
  int node_index(const std::string& name) const;
  /// Position of the named branch in branches().
  std::size_t branch_index(const std::string& id) const;

  /// Positions in branches() of every switch, in order.
  const std::vector<std::size_t>& switch_branches() const noexcept { return switches_; }
  /// State of every switch at time t, ordered as switch_branches().
  std::vector<SwitchState> switch_states(double t) const;

 private:
  std::vector<std::string> node_names_;
  std::vector<Branch> branches_;
  std::vector<GateSignal> gates_;
  FasmParams fasm_;
  std::vector<std::size_t> switches_;
  std::vector<std::size_t> switch_gate_;  // gate index per switch
};

/// Nodal admittance matrix with ground eliminated. Switch states are checked
/// for size only: every switch stamps Y_sw whatever its state. Throws
/// AssemblyError naming the nodes that have no conductive path to ground.
Matrix assemble_admittance(const NetworkModel& network, const std::vector<SwitchState>& switch_states, double dt);

/// Nodes (1-based) without a conductive path to ground.
std::vector<int> isolated_nodes(const NetworkModel& network);

/// Adds the injection of a branch with history current I_h: -I_h at from_node,
/// +I_h at to_node (ground rows dropped).
void stamp_history(Vector& injection, const Branch& branch, double history_current);

}  // namespace qemtp::emtp
