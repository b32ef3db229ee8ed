#pragma once

#include "qemtp/vqls/local_cost.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qemtp::vqls {

struct OptimizerConfig {
  double learning_rate = 0.1;
  int max_iterations = 10000;
  double cost_tolerance = 1e-9;
  int restarts = 3;
  std::uint64_t seed = 1;
  /// A restart is triggered when the cost fell by less than stall_threshold
  /// over the last stall_window iterations.
  int stall_window = 50;
  double stall_threshold = 1e-12;

  void validate() const;
};

struct OptimizeResult {
  Vector alpha;
  std::vector<double> cost_history;  ///< Accepted costs of the best run.
  double cost = 0.0;
  bool converged = false;
  int iterations = 0;  ///< Gradient steps over all runs.
  int restarts_used = 0;
  std::uint64_t circuits_evaluated = 0;
  std::uint64_t circuits_saved = 0;
};

/// Uniform angles in [0, 2 pi) from a seeded generator.
Vector random_parameters(std::size_t count, std::uint64_t seed);

/// Gradient descent alpha <- alpha - eta grad C. Every iteration starts from
/// the configured eta and halves it until the step does not raise the cost.
/// Stops when C <= cost_tolerance or after max_iterations per run; a stalled run restarts from fresh random angles,
/// up to `restarts` times, and the best run is returned. `initial` replaces
/// the random start of the first run. With eta = 0 the start is returned
/// unchanged and flagged non-converged unless it already meets the tolerance.
OptimizeResult optimize(const LocalCost& cost, const OptimizerConfig& config,
                        const std::optional<Vector>& initial = std::nullopt);

}  // namespace qemtp::vqls
