#include "qemtp/emtp/network.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qemtp::emtp {

NetworkModel::NetworkModel(std::vector<std::string> node_names, std::vector<Branch> branches,
                           std::vector<GateSignal> gates, FasmParams fasm)
    : node_names_(std::move(node_names)), branches_(std::move(branches)), gates_(std::move(gates)), fasm_(fasm) {
  if (node_names_.empty()) throw InvalidParameter("network: no nodes");
  std::set<std::string> seen;
  for (const auto& name : node_names_) {
    if (name.empty() || name == "0" || name == "gnd") throw InvalidParameter("network: reserved node name '" + name + "'");
    if (!seen.insert(name).second) throw InvalidParameter("network: duplicate node '" + name + "'");
  }
  std::set<std::string> gate_names;
  for (const auto& g : gates_) {
    validate(g.scheme);
    if (!gate_names.insert(g.name).second) throw InvalidParameter("network: duplicate gate '" + g.name + "'");
  }
  std::set<std::string> ids;
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    const Branch& br = branches_[b];
    br.validate();
    if (br.from_node > node_count() || br.to_node > node_count())
      throw InvalidParameter(br.id + ": node index out of range");
    if (!ids.insert(br.id).second) throw InvalidParameter("network: duplicate branch id '" + br.id + "'");
    if (br.kind == BranchKind::kSwitch) {
      auto it = std::find_if(gates_.begin(), gates_.end(), [&](const GateSignal& g) { return g.name == br.gate; });
      if (it == gates_.end()) throw InvalidParameter(br.id + ": unknown gate '" + br.gate + "'");
      switches_.push_back(b);
      switch_gate_.push_back(static_cast<std::size_t>(it - gates_.begin()));
    }
  }
  if (!switches_.empty()) fasm_.validate();
}

int NetworkModel::node_index(const std::string& name) const {
  if (name == "0" || name == "gnd") return 0;
  auto it = std::find(node_names_.begin(), node_names_.end(), name);
  if (it == node_names_.end()) throw InvalidParameter("network: unknown node '" + name + "'");
  return static_cast<int>(it - node_names_.begin()) + 1;
}

std::size_t NetworkModel::branch_index(const std::string& id) const {
  auto it = std::find_if(branches_.begin(), branches_.end(), [&](const Branch& b) { return b.id == id; });
  if (it == branches_.end()) throw InvalidParameter("network: unknown branch '" + id + "'");
  return static_cast<std::size_t>(it - branches_.begin());
}

std::vector<SwitchState> NetworkModel::switch_states(double t) const {
  std::vector<SwitchState> states;
  states.reserve(switches_.size());
  for (std::size_t k = 0; k < switches_.size(); ++k)
    states.push_back(switch_state(t, gates_[switch_gate_[k]].scheme, branches_[switches_[k]].inverted));
  return states;
}

namespace {

double branch_conductance(const Branch& b, const FasmParams& fasm, double dt) {
  switch (b.kind) {
    case BranchKind::kResistor:
    case BranchKind::kInductor:
    case BranchKind::kCapacitor:
      return discretize_branch(b, dt, 0.0, 0.0).conductance;
    case BranchKind::kVoltageSource:
      return 1.0 / b.value;
    case BranchKind::kCurrentSource:
      return 0.0;
    case BranchKind::kSwitch:
      return fasm.y_sw;
  }
  return 0.0;
}

}  // namespace

std::vector<int> isolated_nodes(const NetworkModel& network) {
  const int n = network.node_count();
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& b : network.branches()) {
    if (b.kind == BranchKind::kCurrentSource) continue;
    parent[static_cast<std::size_t>(find(b.from_node))] = find(b.to_node);
  }
  std::vector<int> isolated;
  const int ground = find(0);
  for (int k = 1; k <= n; ++k)
    if (find(k) != ground) isolated.push_back(k);
  return isolated;
}

Matrix assemble_admittance(const NetworkModel& network, const std::vector<SwitchState>& switch_states, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("assemble_admittance: dt must be positive");
  if (switch_states.size() != network.switch_branches().size())
    throw InvalidParameter("assemble_admittance: one state per switch required");
  const auto isolated = isolated_nodes(network);
  if (!isolated.empty()) {
    std::string names;
    for (int k : isolated) names += (names.empty() ? "" : ", ") + network.node_names()[static_cast<std::size_t>(k - 1)];
    throw AssemblyError("assemble_admittance: singular matrix, no conductive path to ground from node(s) " + names,
                        isolated);
  }
  const int n = network.node_count();
  Matrix g = Matrix::Zero(n, n);
  for (const auto& b : network.branches()) {
    const double y = branch_conductance(b, network.fasm(), dt);
    const int f = b.from_node - 1;
    const int t = b.to_node - 1;
    if (f >= 0) g(f, f) += y;
    if (t >= 0) g(t, t) += y;
    if (f >= 0 && t >= 0) {
      g(f, t) -= y;
      g(t, f) -= y;
    }
  }
  return g;
}

void stamp_history(Vector& injection, const Branch& branch, double history_current) {
  if (branch.from_node > 0) injection(branch.from_node - 1) -= history_current;
  if (branch.to_node > 0) injection(branch.to_node - 1) += history_current;
}

}  // namespace qemtp::emtp
