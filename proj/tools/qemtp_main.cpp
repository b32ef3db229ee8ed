#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qemtp/app/benchmark.hpp"
#include "qemtp/app/compare.hpp"
#include "qemtp/app/matrix_io.hpp"
#include "qemtp/app/simulate.hpp"
#include "qemtp/embed/extended_system.hpp"
#include "qemtp/pauli/accounting.hpp"
#include "qemtp/pauli/mlqc.hpp"
#include "qemtp/version.hpp"
#include "qemtp/vqls/solver.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qemtp;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // generic failure and RMSE threshold breach
constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

std::optional<std::uint64_t> parse_shots(const std::string& text) {
  if (text.empty() || text == "exact") return std::nullopt;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || v == 0) throw InvalidParameter("--shots must be a positive integer or 'exact'");
  return v;
}

pauli::TraceKernel parse_kernel(const std::string& text) {
  if (text == "full") return pauli::TraceKernel::kFullInnerProduct;
  if (text == "sparse") return pauli::TraceKernel::kRowSparse;
  throw InvalidParameter("--kernel must be 'full' or 'sparse'");
}

/// Opens `path` for writing, or returns stdout for "" and "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw InvalidParameter("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string default_meta(const std::string& out_path, const std::string& meta_path) {
  if (!meta_path.empty()) return meta_path;
  if (out_path.empty() || out_path == "-") return "";
  return out_path + ".json";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json base_metadata(const std::string& command) {
  return json{{"command", command}, {"version", kVersion}};
}

json accounting_json(const vqls::CircuitAccounting& a) {
  return json{{"full_count", a.full_count},
              {"real_only_count", a.real_only_count},
              {"saved_per_evaluation", a.saved},
              {"traditional", a.traditional}};
}

// ---------------------------------------------------------------- bench-map

struct BenchMapArgs {
  std::vector<std::size_t> dims{4, 8, 16, 32, 64, 128, 256};
  int repeats = 3;
  std::string r_policy = "full";
  std::string kernel = "full";
  std::uint64_t seed = 1;
  std::string out;
  std::string meta;
};

int run_bench_map(const BenchMapArgs& a) {
  app::BenchMapOptions o;
  o.dims = a.dims;
  o.repeats = a.repeats;
  o.seed = a.seed;
  o.kernel = parse_kernel(a.kernel);
  if (a.r_policy != "full") {
    try {
      o.rank = std::stoi(a.r_policy);
    } catch (const std::exception&) {
      throw InvalidParameter("--r must be 'full' or a positive integer");
    }
  }
  o.validate();
  const auto rows = app::bench_map(o);

  Output out(a.out);
  std::ostream& os = out.stream();
  os << "dim,mlqc_time_s,mlqc_error,naive_time_s,naive_error,speedup,mlqc_median_s,naive_median_s,terms\n";
  for (const auto& r : rows)
    os << r.dim << ',' << fmt(r.mlqc_time_s) << ',' << fmt(r.mlqc_error) << ',' << fmt(r.naive_time_s) << ','
       << fmt(r.naive_error) << ',' << fmt(r.speedup) << ',' << fmt(r.mlqc_median_s) << ','
       << fmt(r.naive_median_s) << ',' << r.terms << '\n';

  json meta = base_metadata("bench-map");
  meta["dims"] = a.dims;
  meta["repeats"] = a.repeats;
  meta["r"] = a.r_policy;
  meta["kernel"] = a.kernel;
  meta["seed"] = a.seed;
  meta["clock"] = "steady_clock";
  write_json(default_meta(a.out, a.meta), meta);
  return kExitOk;
}

// ------------------------------------------------------------------ r-sweep

struct RSweepArgs {
  std::size_t dim = 64;
  std::string r_values = "all";
  std::uint64_t seed = 1;
  std::string matrix;
  std::string out;
  std::string meta;
};

int run_r_sweep(const RSweepArgs& a) {
  std::vector<int> ranks;
  if (a.r_values != "all") {
    std::stringstream ss(a.r_values);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        ranks.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw InvalidParameter("--r-values must be 'all' or a comma separated list of integers");
      }
    }
  }
  std::optional<Matrix> g;
  if (!a.matrix.empty()) g = app::load_matrix(a.matrix);
  const std::size_t dim = g ? static_cast<std::size_t>(g->rows()) : a.dim;
  const auto rows = app::r_sweep(dim, ranks, a.seed, g);

  Output out(a.out);
  std::ostream& os = out.stream();
  os << "R,time_s,error,tail_error\n";
  for (const auto& r : rows) os << r.rank << ',' << fmt(r.time_s) << ',' << fmt(r.error) << ',' << fmt(r.tail_error) << '\n';

  json meta = base_metadata("r-sweep");
  meta["dim"] = dim;
  meta["r_values"] = a.r_values;
  meta["seed"] = a.seed;
  meta["matrix"] = a.matrix.empty() ? json("random_symmetric") : json(a.matrix);
  write_json(default_meta(a.out, a.meta), meta);
  return kExitOk;
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
  std::string matrix;
  std::size_t random_dim = 0;
  std::string method = "mlqc";
  std::string rank = "full";
  bool symmetric = false;
  std::string kernel = "full";
  std::uint64_t seed = 1;
  std::string out;
  std::string meta;
};

int run_decompose(const DecomposeArgs& a) {
  if (a.matrix.empty() == (a.random_dim == 0))
    throw InvalidParameter("decompose: give exactly one of --in/--matrix or --random");
  const Matrix g = a.matrix.empty() ? pauli::random_symmetric(a.random_dim, a.seed) : app::load_matrix(a.matrix);
  if (g.rows() != g.cols()) throw InvalidParameter("decompose: matrix is not square");
  const Matrix g_tilde = embed::extend_matrix(g);
  const pauli::TraceKernel kernel = parse_kernel(a.kernel);

  std::optional<int> rank;
  if (a.rank != "full") {
    std::size_t pos = 0;
    int r = 0;
    try {
      r = std::stoi(a.rank, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != a.rank.size() || r < 1) throw InvalidParameter("--r must be a positive integer or 'full'");
    rank = r;
  }

  pauli::PauliDecomposition d;
  if (a.method == "naive") {
    if (rank) throw InvalidParameter("--r applies to --method mlqc only");
    pauli::DecomposeOptions o;
    o.kernel = kernel;
    o.symmetric_filter = a.symmetric;
    d = pauli::naive_pauli_decompose(g_tilde, o);
  } else if (a.method == "mlqc") {
    pauli::MlqcOptions o;
    o.kernel = kernel;
    o.rank = rank;
    o.symmetric_filter = a.symmetric;
    d = pauli::mlqc_decompose(g_tilde, o);
  } else {
    throw InvalidParameter("--method must be 'naive' or 'mlqc'");
  }

  Output out(a.out);
  d.write(out.stream());

  const int n = d.n_qubits();
  const auto bounds = pauli::effective_basis_bounds(n);
  double odd_y_max = 0.0;
  for (const auto& t : d.terms())
    if (pauli::is_odd_y(t.string)) odd_y_max = std::max(odd_y_max, std::abs(t.coefficient));

  json meta = base_metadata("decompose");
  meta["matrix"] = a.matrix.empty() ? json("random_symmetric") : json(a.matrix);
  meta["dim"] = g.rows();
  meta["n_qubits"] = n;
  meta["method"] = a.method;
  meta["rank"] = d.provenance().rank;
  meta["symmetric_filter"] = a.symmetric;
  meta["seed"] = a.seed;
  meta["terms"] = d.size();
  meta["mapping_error"] = pauli::mapping_error(g_tilde, d);
  meta["max_odd_y_coefficient"] = odd_y_max;
  meta["effective_basis_bounds"] = {bounds.first, bounds.second};
  meta["accounting"] = accounting_json(vqls::circuit_accounting(d));
  std::cerr << "terms " << d.size() << ", mapping error " << fmt(meta["mapping_error"].get<double>()) << '\n';
  write_json(default_meta(a.out, a.meta), meta);
  return kExitOk;
}

// -------------------------------------------------------------------- solve

struct SolveArgs {
  std::string matrix;
  std::string rhs;
  double eps = 1e-7;
  int layers = 3;
  std::uint64_t seed = 1;
  std::string shots = "exact";
  double learning_rate = 0.1;
  int max_iterations = 10000;
  int max_rounds = 10;
  std::string scaling = "auto";
  std::string out;
  std::string meta;
};

int run_solve(const SolveArgs& a) {
  const Matrix g = app::load_matrix(a.matrix);
  const Vector i = app::load_vector(a.rhs);

  emtp::SimulationSettings s;
  s.eps = a.eps;
  s.layers = a.layers;
  s.seed = a.seed;
  s.shots = parse_shots(a.shots);
  s.learning_rate = a.learning_rate;
  s.max_iterations = a.max_iterations;
  vqls::CompensationConfig cfg = app::compensation_config(s);
  cfg.max_rounds = a.max_rounds;
  cfg.scaling = vqls::parse_scaling(a.scaling);
  cfg.validate();

  json meta = base_metadata("solve");
  meta["matrix"] = a.matrix;
  meta["rhs"] = a.rhs;
  meta["seed"] = a.seed;
  meta["learning_rate"] = a.learning_rate;
  meta["layers"] = a.layers;
  meta["eps"] = a.eps;
  meta["shots"] = a.shots;
  meta["scaling"] = a.scaling;

  vqls::VqlsSolver solver(g, cfg);
  meta["n_qubits"] = solver.n_qubits();
  meta["terms_raw"] = pauli::naive_pauli_decompose(solver.g_tilde()).size();
  meta["terms_mapped"] = solver.decomposition().size();
  meta["accounting"] = accounting_json(vqls::circuit_accounting(solver.decomposition()));
  const std::string meta_path = default_meta(a.out, a.meta);
  try {
    const vqls::VqlsSolution sol = solver.solve(i);
    Output out(a.out);
    app::write_matrix(out.stream(), sol.v_physical);
    meta["residual"] = sol.residual;
    meta["compensation_rounds"] = sol.compensation_rounds;
    meta["iterations"] = sol.iterations;
    meta["cost_history"] = sol.cost_history;
    meta["residual_trace"] = sol.residual_trace;
    meta["circuits_evaluated"] = sol.circuits_evaluated;
    meta["circuits_saved"] = sol.circuits_saved;
    write_json(meta_path, meta);
  } catch (const ConvergenceError& e) {
    meta["error"] = e.what();
    meta["residual_trace"] = e.residual_trace();
    write_json(meta_path, meta);
    throw;
  }
  return kExitOk;
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config;
  std::string engine;
  std::string out;
  std::string meta;
  std::optional<double> eps;
  std::optional<int> layers;
  std::optional<std::uint64_t> seed;
  std::string shots;
  std::optional<double> t_end;
  std::optional<double> qemtp_start;
};

int run_simulate(const SimulateArgs& a) {
  emtp::NetworkConfig cfg = emtp::load_network_config(a.config);
  emtp::SimulationSettings& s = cfg.simulation;
  if (!a.engine.empty()) s.engine = a.engine;
  if (a.eps) s.eps = *a.eps;
  if (a.layers) s.layers = *a.layers;
  if (a.seed) s.seed = *a.seed;
  if (!a.shots.empty()) s.shots = parse_shots(a.shots);
  if (a.t_end) s.t_end = *a.t_end;
  if (a.qemtp_start) s.qemtp_start = *a.qemtp_start;
  if (s.engine != "classical" && s.engine != "qemtp") throw InvalidParameter("--engine must be 'classical' or 'qemtp'");

  json meta = base_metadata("simulate");
  json echo = json::object();
  for (const auto& [k, v] : cfg.echo) echo[k] = v;
  meta["config_file"] = a.config;
  meta["config_text"] = read_text(a.config);
  meta["config_echo"] = echo;
  meta["engine"] = s.engine;
  meta["dt"] = s.dt;
  meta["t_end"] = s.t_end;
  meta["eps"] = s.eps;
  meta["layers"] = s.layers;
  meta["seed"] = s.seed;
  meta["learning_rate"] = s.learning_rate;
  meta["max_iterations"] = s.max_iterations;
  meta["shots"] = s.shots ? json(*s.shots) : json("exact");
  meta["qemtp_start"] = s.qemtp_start;
  const std::string meta_path = default_meta(a.out, a.meta);

  app::SimulationResult r;
  try {
    r = app::simulate(cfg);
  } catch (const ConvergenceError& e) {
    meta["error"] = e.what();
    meta["residual_trace"] = e.residual_trace();
    write_json(meta_path, meta);
    throw;
  }

  Output out(a.out);
  r.waveform.write_csv(out.stream());

  meta["steps"] = r.waveform.size() ? r.waveform.size() - 1 : 0;
  meta["n_qubits"] = r.n_qubits;
  meta["terms_raw"] = r.raw_terms;
  meta["terms_mapped"] = r.mapped_terms;
  meta["accounting_raw"] = accounting_json(vqls::circuit_accounting(r.n_qubits, r.raw_terms));
  meta["elapsed_s"] = r.elapsed_s;
  if (r.stats) {
    const auto& st = *r.stats;
    meta["qemtp"] = json{{"vqls_steps", st.vqls_steps},
                         {"classical_steps", st.classical_steps},
                         {"iterations", st.iterations},
                         {"compensation_rounds", st.compensation_rounds},
                         {"max_compensation_rounds", st.max_compensation_rounds},
                         {"circuits_saved", st.circuits_saved},
                         {"max_relative_error", st.max_relative_error}};
    meta["accounting_mapped"] = accounting_json(vqls::circuit_accounting(st.n_qubits, st.term_count));
  }
  write_json(meta_path, meta);
  if (r.stats) std::cerr << "max relative error " << fmt(r.stats->max_relative_error) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ compare

struct CompareArgs {
  std::string a;
  std::string b;
  std::optional<double> max_rmse;
  std::string json_out;
};

emtp::Waveform load_waveform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  return emtp::Waveform::read_csv(in);
}

int run_compare(const CompareArgs& a) {
  const app::CompareResult r = app::compare_waveforms(load_waveform(a.a), load_waveform(a.b));
  std::cout << "rmse " << fmt(r.rmse) << "\nrmse_pu " << fmt(r.rmse_pu) << "\nmax_rel_err " << fmt(r.max_rel_err)
            << "\nchannel,rmse,max_abs_diff,max_abs_ref\n";
  json channels = json::array();
  for (const auto& c : r.channels) {
    std::cout << c.name << ',' << fmt(c.rmse) << ',' << fmt(c.max_abs_diff) << ',' << fmt(c.max_abs_ref) << '\n';
    channels.push_back(json{{"name", c.name}, {"rmse", c.rmse}, {"max_abs_diff", c.max_abs_diff}, {"max_abs_ref", c.max_abs_ref}});
  }
  json meta = base_metadata("compare");
  meta["a"] = a.a;
  meta["b"] = a.b;
  meta["rmse"] = r.rmse;
  meta["rmse_pu"] = r.rmse_pu;
  meta["max_rel_err"] = r.max_rel_err;
  meta["channels"] = channels;
  if (a.max_rmse) meta["max_rmse"] = *a.max_rmse;
  write_json(a.json_out, meta);
  if (a.max_rmse && r.rmse > *a.max_rmse) {
    std::cerr << "rmse " << fmt(r.rmse) << " exceeds " << fmt(*a.max_rmse) << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-assisted electromagnetic transient simulation tools"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  BenchMapArgs bm;
  auto* c_bm = app.add_subcommand("bench-map", "Time naive Pauli mapping against MLQC on random symmetric matrices");
  c_bm->add_option("--dims", bm.dims, "Matrix dimensions, powers of two in [4, 1024]")->delimiter(',');
  c_bm->add_option("--repeats", bm.repeats, "Repeats per dimension")->capture_default_str();
  c_bm->add_option("--r", bm.r_policy, "Kronecker rank: 'full' or an integer")->capture_default_str();
  c_bm->add_option("--kernel", bm.kernel, "Trace kernel: full | sparse")->capture_default_str();
  c_bm->add_option("--seed", bm.seed, "Base seed")->capture_default_str();
  c_bm->add_option("--out", bm.out, "CSV output (stdout when omitted)");
  c_bm->add_option("--meta", bm.meta, "JSON metadata path (default <out>.json)");

  RSweepArgs rs;
  auto* c_rs = app.add_subcommand("r-sweep", "MLQC reconstruction error against Kronecker rank");
  c_rs->add_option("--dim", rs.dim, "Matrix dimension (power of two)")->capture_default_str();
  c_rs->add_option("--r-values", rs.r_values, "'all' or comma separated ranks")->capture_default_str();
  c_rs->add_option("--seed", rs.seed, "Seed of the random symmetric input")->capture_default_str();
  c_rs->add_option("--matrix", rs.matrix, "Use this matrix file instead of a random one");
  c_rs->add_option("--out", rs.out, "CSV output (stdout when omitted)");
  c_rs->add_option("--meta", rs.meta, "JSON metadata path (default <out>.json)");

  DecomposeArgs dc;
  auto* c_dc = app.add_subcommand("decompose", "Pauli-decompose a matrix (zero-padded to a power of two)");
  c_dc->add_option("--in,--matrix", dc.matrix, "Matrix file: rows of comma/space separated numbers");
  c_dc->add_option("--random", dc.random_dim, "Decompose a random symmetric matrix of this dimension");
  c_dc->add_option("--method", dc.method, "naive | mlqc")->capture_default_str();
  c_dc->add_option("--r,--rank", dc.rank, "MLQC Kronecker rank: a positive integer or 'full'")->capture_default_str();
  c_dc->add_flag("--symmetric", dc.symmetric, "Skip strings with an odd number of Y factors");
  c_dc->add_option("--kernel", dc.kernel, "Trace kernel: full | sparse")->capture_default_str();
  c_dc->add_option("--seed", dc.seed, "Seed for --random")->capture_default_str();
  c_dc->add_option("--out", dc.out, "Term list output (stdout when omitted)");
  c_dc->add_option("--meta", dc.meta, "JSON metadata path (default <out>.json)");

  SolveArgs sv;
  auto* c_sv = app.add_subcommand("solve", "Solve G v = i with the compensated variational solver");
  c_sv->add_option("--matrix", sv.matrix, "Matrix file")->required();
  c_sv->add_option("--rhs", sv.rhs, "Right-hand side file (one row or column)")->required();
  c_sv->add_option("--eps", sv.eps, "Residual threshold")->capture_default_str();
  c_sv->add_option("--layers", sv.layers, "Ansatz layers")->capture_default_str();
  c_sv->add_option("--seed", sv.seed, "Optimizer seed")->capture_default_str();
  c_sv->add_option("--shots", sv.shots, "Shots per Hadamard test, or 'exact'")->capture_default_str();
  c_sv->add_option("--learning-rate", sv.learning_rate, "Initial step size")->capture_default_str();
  c_sv->add_option("--max-iterations", sv.max_iterations, "Iterations per optimizer run")->capture_default_str();
  c_sv->add_option("--max-rounds", sv.max_rounds, "Compensation rounds")->capture_default_str();
  c_sv->add_option("--scaling", sv.scaling, "auto | jacobi | none")->capture_default_str();
  c_sv->add_option("--out", sv.out, "Solution output (stdout when omitted)");
  c_sv->add_option("--meta", sv.meta, "JSON metadata path (default <out>.json)");

  SimulateArgs sm;
  auto* c_sm = app.add_subcommand("simulate", "Run a network transient");
  c_sm->add_option("--config", sm.config, "Network config file")->required();
  c_sm->add_option("--engine", sm.engine, "classical | qemtp (overrides the config)");
  c_sm->add_option("--out", sm.out, "Waveform CSV output (stdout when omitted)");
  c_sm->add_option("--meta", sm.meta, "JSON metadata path (default <out>.json)");
  c_sm->add_option("--eps", sm.eps, "Residual threshold");
  c_sm->add_option("--layers", sm.layers, "Ansatz layers");
  c_sm->add_option("--seed", sm.seed, "Optimizer seed");
  c_sm->add_option("--shots", sm.shots, "Shots per Hadamard test, or 'exact'");
  c_sm->add_option("--t-end", sm.t_end, "End time (s)");
  c_sm->add_option("--qemtp-start", sm.qemtp_start, "First time solved by the variational engine (s)");

  CompareArgs cp;
  auto* c_cp = app.add_subcommand("compare", "Compare two waveform CSV files");
  c_cp->add_option("a", cp.a, "First CSV")->required();
  c_cp->add_option("b", cp.b, "Reference CSV")->required();
  c_cp->add_option("--max-rmse", cp.max_rmse, "Exit with status 1 when the RMSE exceeds this");
  c_cp->add_option("--json", cp.json_out, "Write the comparison as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*c_bm) return run_bench_map(bm);
    if (*c_rs) return run_r_sweep(rs);
    if (*c_dc) return run_decompose(dc);
    if (*c_sv) return run_solve(sv);
    if (*c_sm) return run_simulate(sm);
    if (*c_cp) return run_compare(cp);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
