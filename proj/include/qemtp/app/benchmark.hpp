#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qemtp/pauli/decomposition.hpp"

namespace qemtp::app {

struct BenchMapOptions {
  std::vector<std::size_t> dims;
  int repeats = 3;
  /// Kronecker rank used by MLQC; empty means full rank.
  std::optional<int> rank;
  std::uint64_t seed = 1;
  pauli::TraceKernel kernel = pauli::TraceKernel::kFullInnerProduct;
  void validate() const;
};

/// One dimension of the mapping benchmark. Times are seconds on a monotonic
/// clock; errors are relative Frobenius reconstruction errors (worst repeat).
struct BenchMapRow {
  std::size_t dim = 0;
  double mlqc_time_s = 0.0;  ///< mean
  double mlqc_error = 0.0;
  double naive_time_s = 0.0;  ///< mean
  double naive_error = 0.0;
  double speedup = 0.0;  ///< naive mean / MLQC mean
  double mlqc_median_s = 0.0;
  double naive_median_s = 0.0;
  std::size_t terms = 0;  ///< nonzero Pauli terms of the last repeat
};

/// Repeat r of dimension d decomposes random_symmetric(d, seed + r).
std::vector<BenchMapRow> bench_map(const BenchMapOptions& options);

struct RSweepRow {
  int rank = 0;
  double time_s = 0.0;
  double error = 0.0;       ///< ||G - sum_k c_k g_k||_F / ||G||_F
  double tail_error = 0.0;  ///< sqrt(sum_{r > R} sigma_r^2) / ||G||_F
};

/// MLQC at each requested rank on random_symmetric(dim, seed), or on `g`
/// when given. Empty `ranks` sweeps 1..max rank.
std::vector<RSweepRow> r_sweep(std::size_t dim, std::vector<int> ranks, std::uint64_t seed,
                               const std::optional<Matrix>& g = std::nullopt);

double median(std::vector<double> values);

}  // namespace qemtp::app
