#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "qemtp/app/benchmark.hpp"
#include "qemtp/app/compare.hpp"
#include "qemtp/app/simulate.hpp"
#include "qemtp/embed/extended_system.hpp"
#include "qemtp/emtp/config.hpp"
#include "qemtp/pauli/kronecker.hpp"
#include "qemtp/pauli/mlqc.hpp"
#include "qemtp/qsim/circuits.hpp"
#include "qemtp/version.hpp"
#include "qemtp/vqls/local_cost.hpp"
#include "qemtp/vqls/solver.hpp"

namespace py = pybind11;
using namespace qemtp;

namespace {

pauli::TraceKernel kernel_from(const std::string& name) {
  if (name == "full") return pauli::TraceKernel::kFullInnerProduct;
  if (name == "sparse") return pauli::TraceKernel::kRowSparse;
  throw InvalidParameter("kernel must be 'full' or 'sparse'");
}

py::dict waveform_dict(const emtp::Waveform& w) {
  py::dict d;
  d["t"] = Vector(Eigen::Map<const Vector>(w.time().data(), static_cast<Eigen::Index>(w.size())));
  for (std::size_t c = 0; c < w.channel_names().size(); ++c) {
    const auto& col = w.channel(c);
    d[py::str(w.channel_names()[c])] = Vector(Eigen::Map<const Vector>(col.data(), static_cast<Eigen::Index>(col.size())));
  }
  return d;
}

vqls::CompensationConfig make_config(double eps, int layers, std::uint64_t seed, double learning_rate,
                                     int max_iterations, int max_rounds, std::optional<std::uint64_t> shots,
                                     const std::string& scaling) {
  emtp::SimulationSettings s;
  s.eps = eps;
  s.layers = layers;
  s.seed = seed;
  s.learning_rate = learning_rate;
  s.max_iterations = max_iterations;
  s.shots = shots;
  vqls::CompensationConfig c = app::compensation_config(s);
  c.max_rounds = max_rounds;
  c.scaling = vqls::parse_scaling(scaling);
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_qemtp, m) {
  m.doc() = "Quantum-assisted electromagnetic transient simulation core";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "QemtpError", PyExc_RuntimeError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<AssemblyError>(m, "AssemblyError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  py::class_<pauli::PauliDecomposition>(m, "PauliDecomposition")
      .def_property_readonly("n_qubits", &pauli::PauliDecomposition::n_qubits)
      .def("__len__", &pauli::PauliDecomposition::size)
      .def("terms",
           [](const pauli::PauliDecomposition& d) {
             std::vector<std::pair<std::string, double>> out;
             for (const auto& t : d.terms()) out.emplace_back(t.string.str(), t.coefficient);
             return out;
           },
           "List of (pauli string, coefficient) pairs")
      .def("coefficient",
           [](const pauli::PauliDecomposition& d, const std::string& s) {
             return d.coefficient(pauli::PauliString::parse(s));
           })
      .def("reconstruct", &pauli::PauliDecomposition::reconstruct, "Dense sum of c_k g_k");

  m.def("random_symmetric", &pauli::random_symmetric, py::arg("dim"), py::arg("seed"),
        "Random real symmetric matrix with U[0,1) entries");
  m.def("extend_matrix", &embed::extend_matrix, py::arg("g"), "Zero-pad to a power of two with a unit diagonal tail");
  m.def(
      "naive_pauli_decompose",
      [](const Matrix& g, const std::string& kernel) {
        pauli::DecomposeOptions o;
        o.kernel = kernel_from(kernel);
        return pauli::naive_pauli_decompose(g, o);
      },
      py::arg("g"), py::arg("kernel") = "full");
  m.def(
      "mlqc_decompose",
      [](const Matrix& g, std::optional<int> rank, const std::string& kernel) {
        pauli::MlqcOptions o;
        o.rank = rank;
        o.kernel = kernel_from(kernel);
        return pauli::mlqc_decompose(g, o);
      },
      py::arg("g"), py::arg("rank") = py::none(), py::arg("kernel") = "full");
  m.def("mapping_error", &pauli::mapping_error, py::arg("g"), py::arg("decomposition"));
  m.def(
      "kronecker_singular_values",
      [](const Matrix& g) { return pauli::gkd(g).singular_values; }, py::arg("g"),
      "Singular values of the rearranged matrix");

  m.def(
      "circuit_accounting",
      [](int n_qubits, std::uint64_t terms) {
        const auto a = vqls::circuit_accounting(n_qubits, terms);
        py::dict d;
        d["full_count"] = a.full_count;
        d["real_only_count"] = a.real_only_count;
        d["saved"] = a.saved;
        d["traditional"] = a.traditional;
        return d;
      },
      py::arg("n_qubits"), py::arg("terms"));

  m.def(
      "ansatz_state",
      [](int n_qubits, int layers, const Vector& params) {
        qsim::AnsatzConfig c;
        c.n_qubits = n_qubits;
        c.layers = layers;
        c.params = params;
        return qsim::ansatz_real(c);
      },
      py::arg("n_qubits"), py::arg("layers"), py::arg("params"), "Real amplitudes of V(alpha)|0>");

  m.def(
      "local_cost",
      [](const Matrix& g, const Vector& i, const Vector& alpha, int layers) {
        const embed::ExtendedSystem sys = embed::extend_system(g, i);
        const pauli::PauliDecomposition d = pauli::naive_pauli_decompose(sys.g_tilde);
        const qsim::AmplitudeEncoder enc(sys.i_hat / sys.i_norm);
        const vqls::LocalCost cost(d, enc, layers);
        const vqls::CostEvaluation e = cost.evaluate(alpha);
        py::dict out;
        out["value"] = e.value;
        out["numerator"] = e.numerator;
        out["denominator"] = e.denominator;
        out["gradient"] = cost.gradient(alpha);
        return out;
      },
      py::arg("g"), py::arg("i"), py::arg("alpha"), py::arg("layers") = 3,
      "Local cost, its N and D parts, and the parameter-shift gradient for G v = i");

  m.def(
      "solve",
      [](const Matrix& g, const Vector& i, double eps, int layers, std::uint64_t seed, double learning_rate,
         int max_iterations, int max_rounds, std::optional<std::uint64_t> shots, const std::string& scaling) {
        const auto cfg = make_config(eps, layers, seed, learning_rate, max_iterations, max_rounds, shots, scaling);
        vqls::VqlsSolution s;
        {
          py::gil_scoped_release release;
          s = vqls::solve_with_compensation(g, i, cfg);
        }
        py::dict out;
        out["v"] = s.v_physical;
        out["v_unit"] = s.v_unit;
        out["alpha"] = s.alpha_opt;
        out["residual"] = s.residual;
        out["compensation_rounds"] = s.compensation_rounds;
        out["cost_history"] = s.cost_history;
        out["residual_trace"] = s.residual_trace;
        out["iterations"] = s.iterations;
        out["circuits_evaluated"] = s.circuits_evaluated;
        out["circuits_saved"] = s.circuits_saved;
        return out;
      },
      py::arg("g"), py::arg("i"), py::arg("eps") = 1e-7, py::arg("layers") = 3, py::arg("seed") = 1,
      py::arg("learning_rate") = 0.1, py::arg("max_iterations") = 10000, py::arg("max_rounds") = 10,
      py::arg("shots") = py::none(), py::arg("scaling") = "auto",
      "Solve G v = i with the compensated variational solver");

  m.def(
      "simulate",
      [](const std::string& path, std::optional<std::string> engine, std::optional<double> t_end,
         std::optional<double> qemtp_start) {
        emtp::NetworkConfig cfg = emtp::load_network_config(path);
        if (engine) cfg.simulation.engine = *engine;
        if (t_end) cfg.simulation.t_end = *t_end;
        if (qemtp_start) cfg.simulation.qemtp_start = *qemtp_start;
        app::SimulationResult r;
        {
          py::gil_scoped_release release;
          r = app::simulate(cfg);
        }
        py::dict out;
        out["waveform"] = waveform_dict(r.waveform);
        out["n_qubits"] = r.n_qubits;
        out["terms_raw"] = r.raw_terms;
        out["terms_mapped"] = r.mapped_terms;
        if (r.stats) {
          out["max_relative_error"] = r.stats->max_relative_error;
          out["iterations"] = r.stats->iterations;
          out["circuits_saved"] = r.stats->circuits_saved;
          out["max_compensation_rounds"] = r.stats->max_compensation_rounds;
        }
        return out;
      },
      py::arg("config"), py::arg("engine") = py::none(), py::arg("t_end") = py::none(),
      py::arg("qemtp_start") = py::none(), "Run a network transient from a config file");

  m.def(
      "compare_csv",
      [](const std::string& a, const std::string& b) {
        auto load = [](const std::string& p) {
          std::ifstream in(p);
          if (!in) throw InvalidParameter("cannot open " + p);
          return emtp::Waveform::read_csv(in);
        };
        const app::CompareResult r = app::compare_waveforms(load(a), load(b));
        py::dict out;
        out["rmse"] = r.rmse;
        out["rmse_pu"] = r.rmse_pu;
        out["max_rel_err"] = r.max_rel_err;
        py::dict ch;
        for (const auto& c : r.channels) ch[py::str(c.name)] = c.rmse;
        out["channel_rmse"] = ch;
        return out;
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "bench_map",
      [](std::vector<std::size_t> dims, int repeats, std::optional<int> rank, std::uint64_t seed) {
        app::BenchMapOptions o;
        o.dims = std::move(dims);
        o.repeats = repeats;
        o.rank = rank;
        o.seed = seed;
        std::vector<py::dict> rows;
        for (const auto& r : app::bench_map(o)) {
          py::dict d;
          d["dim"] = r.dim;
          d["mlqc_time_s"] = r.mlqc_time_s;
          d["mlqc_error"] = r.mlqc_error;
          d["naive_time_s"] = r.naive_time_s;
          d["naive_error"] = r.naive_error;
          d["speedup"] = r.speedup;
          rows.push_back(d);
        }
        return rows;
      },
      py::arg("dims"), py::arg("repeats") = 3, py::arg("rank") = py::none(), py::arg("seed") = 1);

  m.def(
      "r_sweep",
      [](std::size_t dim, std::vector<int> ranks, std::uint64_t seed) {
        std::vector<std::tuple<int, double, double>> rows;
        for (const auto& r : app::r_sweep(dim, std::move(ranks), seed)) rows.emplace_back(r.rank, r.error, r.tail_error);
        return rows;
      },
      py::arg("dim"), py::arg("ranks") = std::vector<int>{}, py::arg("seed") = 1,
      "(R, error, tail_error) rows; empty ranks sweeps every rank");
}
