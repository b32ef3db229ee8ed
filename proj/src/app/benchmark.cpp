#include "qemtp/app/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "qemtp/pauli/kronecker.hpp"
#include "qemtp/pauli/mlqc.hpp"

namespace qemtp::app {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size()); }

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidParameter("median: no values");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

void BenchMapOptions::validate() const {
  if (dims.empty()) throw InvalidParameter("bench-map: no dimensions given");
  for (std::size_t d : dims)
    if (!is_power_of_two(d) || d < 4 || d > 1024)
      throw InvalidParameter("bench-map: dimension " + std::to_string(d) + " is not a power of two in [4, 1024]");
  if (repeats < 1) throw InvalidParameter("bench-map: repeats must be >= 1");
  if (rank && *rank < 1) throw InvalidParameter("bench-map: rank must be >= 1");
}

std::vector<BenchMapRow> bench_map(const BenchMapOptions& options) {
  options.validate();
  std::vector<BenchMapRow> rows;
  for (std::size_t dim : options.dims) {
    BenchMapRow row;
    row.dim = dim;
    std::vector<double> mlqc_times, naive_times;
    for (int r = 0; r < options.repeats; ++r) {
      const Matrix g = pauli::random_symmetric(dim, options.seed + static_cast<std::uint64_t>(r));

      pauli::MlqcOptions mo;
      mo.rank = options.rank;
      mo.kernel = options.kernel;
      auto start = Clock::now();
      const pauli::PauliDecomposition mlqc = pauli::mlqc_decompose(g, mo);
      mlqc_times.push_back(seconds_since(start));

      pauli::DecomposeOptions no;
      no.kernel = options.kernel;
      start = Clock::now();
      const pauli::PauliDecomposition naive = pauli::naive_pauli_decompose(g, no);
      naive_times.push_back(seconds_since(start));

      row.mlqc_error = std::max(row.mlqc_error, pauli::mapping_error(g, mlqc));
      row.naive_error = std::max(row.naive_error, pauli::mapping_error(g, naive));
      row.terms = naive.size();
    }
    row.mlqc_time_s = mean(mlqc_times);
    row.naive_time_s = mean(naive_times);
    row.mlqc_median_s = median(mlqc_times);
    row.naive_median_s = median(naive_times);
    row.speedup = row.mlqc_time_s > 0.0 ? row.naive_time_s / row.mlqc_time_s : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::vector<RSweepRow> r_sweep(std::size_t dim, std::vector<int> ranks, std::uint64_t seed,
                               const std::optional<Matrix>& g_in) {
  if (!is_power_of_two(dim) || dim < 2) throw InvalidParameter("r-sweep: dimension must be a power of two >= 2");
  const Matrix g = g_in ? *g_in : pauli::random_symmetric(dim, seed);
  if (static_cast<std::size_t>(g.rows()) != dim || g.rows() != g.cols())
    throw InvalidParameter("r-sweep: matrix does not match the dimension");
  const pauli::BlockDims dims = pauli::BlockDims::square_split(exact_log2(dim));
  const int full = pauli::max_rank(dims);
  if (ranks.empty()) {
    ranks.resize(static_cast<std::size_t>(full));
    std::iota(ranks.begin(), ranks.end(), 1);
  }
  const double norm = g.norm();
  std::vector<RSweepRow> rows;
  for (int rank : ranks) {
    if (rank < 1 || rank > full)
      throw InvalidParameter("r-sweep: rank " + std::to_string(rank) + " outside [1, " + std::to_string(full) + "]");
    const auto start = Clock::now();
    const pauli::KroneckerFactorSet factors = pauli::gkd(g, dims, rank);
    const pauli::PauliDecomposition d = pauli::mlqc_from_factors(factors, g.cwiseAbs().maxCoeff());
    RSweepRow row;
    row.time_s = seconds_since(start);
    row.rank = rank;
    row.error = pauli::mapping_error(g, d);
    row.tail_error = norm > 0.0 ? factors.tail_norm() / norm : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qemtp::app
