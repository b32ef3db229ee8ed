#include "qemtp/emtp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace qemtp::emtp {

namespace {

double to_double(const std::string& s, int line) {
  double x = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) throw ParseError("expected a number, got '" + s + "'", line);
  return x;
}

long long to_integer(const std::string& s, int line) {
  long long x = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ParseError("expected an integer, got '" + s + "'", line);
  return x;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

void expect_count(const std::vector<std::string>& tok, std::size_t lo, std::size_t hi, int line, const char* form) {
  if (tok.size() < lo || tok.size() > hi) throw ParseError(std::string("expected: ") + form, line);
}

struct PendingBranch {
  Branch branch;
  std::string from;
  std::string to;
  int line = 0;
};

SourceFunction parse_source(const std::vector<std::string>& tok, std::size_t at, int line, std::size_t* used) {
  const std::string& shape = tok[at];
  if (shape == "dc") {
    if (tok.size() < at + 2) throw ParseError("dc source needs a value", line);
    *used = 2;
    return SourceFunction::dc(to_double(tok[at + 1], line));
  }
  if (shape == "sine") {
    if (tok.size() < at + 4) throw ParseError("sine source needs <peak> <hz> <deg>", line);
    *used = 4;
    return SourceFunction::sine(to_double(tok[at + 1], line), to_double(tok[at + 2], line), to_double(tok[at + 3], line));
  }
  throw ParseError("unknown source shape '" + shape + "'", line);
}

}  // namespace

NetworkConfig parse_network_config(std::istream& in) {
  std::vector<std::string> nodes;
  std::vector<PendingBranch> pending;
  std::vector<GateSignal> gates;
  FasmParams fasm;
  std::optional<std::pair<std::string, std::string>> y_sw_lc;
  int y_sw_line = 0;
  SimulationSettings sim;
  std::vector<std::pair<std::string, std::string>> echo;
  bool saw_dt = false;
  bool saw_t_end = false;

  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto cut = raw.find_first_of("#;");
    std::string text = raw.substr(0, cut);
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    text = text.substr(first);
    text.erase(text.find_last_not_of(" \t\r") + 1);

    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError("unterminated section header", line);
      section = text.substr(1, text.size() - 2);
      if (section != "nodes" && section != "branches" && section != "sources" && section != "switches" &&
          section != "simulation")
        throw ParseError("unknown section [" + section + "]", line);
      continue;
    }
    if (section.empty()) throw ParseError("content before the first section header", line);

    if (section == "nodes") {
      for (auto& name : tokens(text)) nodes.push_back(name);
      continue;
    }

    if (section == "simulation") {
      std::string kv = text;
      for (auto& c : kv)
        if (c == '=') c = ' ';
      const auto tok = tokens(kv);
      expect_count(tok, 2, 2, line, "<key> = <value>");
      const std::string& key = tok[0];
      const std::string& value = tok[1];
      echo.emplace_back(key, value);
      if (key == "dt") {
        sim.dt = to_double(value, line);
        saw_dt = true;
      } else if (key == "t_end") {
        sim.t_end = to_double(value, line);
        saw_t_end = true;
      } else if (key == "engine") {
        if (value != "classical" && value != "qemtp") throw ParseError("engine must be classical or qemtp", line);
        sim.engine = value;
      } else if (key == "eps") {
        sim.eps = to_double(value, line);
      } else if (key == "layers") {
        sim.layers = static_cast<int>(to_integer(value, line));
      } else if (key == "seed") {
        const auto s = to_integer(value, line);
        if (s < 0) throw ParseError("seed must be non-negative", line);
        sim.seed = static_cast<std::uint64_t>(s);
      } else if (key == "shots") {
        if (value == "exact") {
          sim.shots.reset();
        } else {
          const auto s = to_integer(value, line);
          if (s <= 0) throw ParseError("shots must be positive or 'exact'", line);
          sim.shots = static_cast<std::uint64_t>(s);
        }
      } else if (key == "qemtp_start") {
        sim.qemtp_start = to_double(value, line);
      } else if (key == "learning_rate") {
        sim.learning_rate = to_double(value, line);
      } else if (key == "max_iterations") {
        sim.max_iterations = static_cast<int>(to_integer(value, line));
      } else {
        throw ParseError("unknown simulation key '" + key + "'", line);
      }
      continue;
    }

    const auto tok = tokens(text);
    if (section == "branches") {
      expect_count(tok, 5, 5, line, "<id> R|L|C <from> <to> <value>");
      PendingBranch p;
      p.branch.id = tok[0];
      if (tok[1] == "R") p.branch.kind = BranchKind::kResistor;
      else if (tok[1] == "L") p.branch.kind = BranchKind::kInductor;
      else if (tok[1] == "C") p.branch.kind = BranchKind::kCapacitor;
      else throw ParseError("branch kind must be R, L or C", line);
      p.from = tok[2];
      p.to = tok[3];
      p.branch.value = to_double(tok[4], line);
      if (!(p.branch.value > 0.0)) throw ParseError("element value must be positive", line);
      p.line = line;
      pending.push_back(std::move(p));
    } else if (section == "sources") {
      expect_count(tok, 6, 9, line, "<id> V|I <from> <to> dc <value> | sine <peak> <hz> <deg> [r=<ohms>]");
      PendingBranch p;
      p.branch.id = tok[0];
      if (tok[1] == "V") p.branch.kind = BranchKind::kVoltageSource;
      else if (tok[1] == "I") p.branch.kind = BranchKind::kCurrentSource;
      else throw ParseError("source kind must be V or I", line);
      p.from = tok[2];
      p.to = tok[3];
      std::size_t used = 0;
      p.branch.source = parse_source(tok, 4, line, &used);
      p.branch.value = p.branch.kind == BranchKind::kVoltageSource ? kDefaultSourceResistance : 0.0;
      for (std::size_t k = 4 + used; k < tok.size(); ++k) {
        if (tok[k].rfind("r=", 0) != 0 || p.branch.kind != BranchKind::kVoltageSource)
          throw ParseError("unexpected token '" + tok[k] + "'", line);
        p.branch.value = to_double(tok[k].substr(2), line);
        if (!(p.branch.value > 0.0)) throw ParseError("series resistance must be positive", line);
      }
      p.line = line;
      pending.push_back(std::move(p));
    } else if (section == "switches") {
      if (tok[0] == "gate") {
        expect_count(tok, 3, 7, line, "gate <name> duty|sine_triangle ...");
        GateSignal g;
        g.name = tok[1];
        if (tok[2] == "duty") {
          expect_count(tok, 5, 6, line, "gate <name> duty <hz> <duty> [<phase>]");
          DutyCyclePwm d{to_double(tok[3], line), to_double(tok[4], line), tok.size() == 6 ? to_double(tok[5], line) : 0.0};
          g.scheme = d;
        } else if (tok[2] == "sine_triangle") {
          expect_count(tok, 7, 7, line, "gate <name> sine_triangle <carrier_hz> <ref_hz> <index> <deg>");
          g.scheme = SineTrianglePwm{to_double(tok[3], line), to_double(tok[4], line), to_double(tok[5], line),
                                     to_double(tok[6], line)};
        } else {
          throw ParseError("unknown gate scheme '" + tok[2] + "'", line);
        }
        try {
          validate(g.scheme);
        } catch (const InvalidParameter& e) {
          throw ParseError(e.what(), line);
        }
        gates.push_back(std::move(g));
      } else if (tok[0] == "y_sw") {
        if (tok.size() == 2) {
          fasm.y_sw = to_double(tok[1], line);
          y_sw_lc.reset();
        } else {
          expect_count(tok, 4, 4, line, "y_sw <siemens> | y_sw lc <inductor_id> <capacitor_id>");
          if (tok[1] != "lc") throw ParseError("expected 'lc' after y_sw", line);
          y_sw_lc = std::make_pair(tok[2], tok[3]);
        }
        y_sw_line = line;
      } else if (tok[0] == "fasm") {
        expect_count(tok, 5, 5, line, "fasm <alpha_on> <beta_on> <alpha_off> <beta_off>");
        fasm.alpha_on = to_double(tok[1], line);
        fasm.beta_on = to_double(tok[2], line);
        fasm.alpha_off = to_double(tok[3], line);
        fasm.beta_off = to_double(tok[4], line);
      } else {
        expect_count(tok, 4, 5, line, "<id> <from> <to> <gate> [inverted]");
        PendingBranch p;
        p.branch.id = tok[0];
        p.branch.kind = BranchKind::kSwitch;
        p.from = tok[1];
        p.to = tok[2];
        p.branch.gate = tok[3];
        if (tok.size() == 5) {
          if (tok[4] != "inverted") throw ParseError("unexpected token '" + tok[4] + "'", line);
          p.branch.inverted = true;
        }
        p.line = line;
        pending.push_back(std::move(p));
      }
    }
  }

  if (nodes.empty()) throw ParseError("no [nodes] declared", 0);
  if (!saw_dt || !saw_t_end) throw ParseError("[simulation] must set dt and t_end", 0);
  if (!(sim.dt > 0.0) || !(sim.t_end > 0.0)) throw ParseError("dt and t_end must be positive", 0);
  if (!(sim.eps > 0.0)) throw ParseError("eps must be positive", 0);
  if (sim.layers < 0) throw ParseError("layers must be non-negative", 0);
  if (!(sim.learning_rate >= 0.0)) throw ParseError("learning_rate must be non-negative", 0);
  if (sim.max_iterations < 0) throw ParseError("max_iterations must be non-negative", 0);

  auto resolve = [&](const std::string& name, int at) {
    if (name == "0" || name == "gnd") return 0;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (nodes[k] == name) return static_cast<int>(k) + 1;
    throw ParseError("unknown node '" + name + "'", at);
  };
  std::vector<Branch> branches;
  for (auto& p : pending) {
    p.branch.from_node = resolve(p.from, p.line);
    p.branch.to_node = resolve(p.to, p.line);
    try {
      p.branch.validate();
    } catch (const InvalidParameter& e) {
      throw ParseError(e.what(), p.line);
    }
    branches.push_back(p.branch);
  }
  if (y_sw_lc) {
    double l = 0.0;
    double c = 0.0;
    for (const auto& b : branches) {
      if (b.id == y_sw_lc->first && b.kind == BranchKind::kInductor) l = b.value;
      if (b.id == y_sw_lc->second && b.kind == BranchKind::kCapacitor) c = b.value;
    }
    if (l == 0.0 || c == 0.0) throw ParseError("y_sw lc: need an inductor id then a capacitor id", y_sw_line);
    fasm.y_sw = FasmParams::lc_admittance(l, c);
  }
  try {
    NetworkModel network(nodes, std::move(branches), std::move(gates), fasm);
    return {std::move(network), sim, std::move(echo)};
  } catch (const InvalidParameter& e) {
    throw ParseError(e.what(), 0);
  }
}

NetworkConfig load_network_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open network config '" + path + "'");
  return parse_network_config(in);
}

}  // namespace qemtp::emtp
