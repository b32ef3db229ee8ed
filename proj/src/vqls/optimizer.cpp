#include "qemtp/vqls/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qemtp::vqls {

void OptimizerConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) throw InvalidParameter("optimizer: learning rate must be >= 0");
  if (max_iterations < 0) throw InvalidParameter("optimizer: max_iterations must be >= 0");
  if (!(cost_tolerance > 0.0)) throw InvalidParameter("optimizer: cost tolerance must be positive");
  if (restarts < 0) throw InvalidParameter("optimizer: restarts must be >= 0");
  if (stall_window < 1 || !(stall_threshold >= 0.0)) throw InvalidParameter("optimizer: invalid stall criterion");
}

Vector random_parameters(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Vector alpha(static_cast<Eigen::Index>(count));
  for (Eigen::Index k = 0; k < alpha.size(); ++k) alpha(k) = angle(rng);
  return alpha;
}

namespace {

struct Run {
  Vector alpha;
  std::vector<double> history;
  double cost = 0.0;
  bool stalled = false;
};

}  // namespace

OptimizeResult optimize(const LocalCost& cost, const OptimizerConfig& config, const std::optional<Vector>& initial) {
  config.validate();
  const std::size_t p = cost.parameter_count();
  if (initial && static_cast<std::size_t>(initial->size()) != p) throw InvalidParameter("optimizer: initial parameter count mismatch");

  OptimizeResult result;
  std::uint64_t stream = 0;
  std::mt19937_64 seeds(config.seed);
  auto count = [&](const CostEvaluation& e, std::uint64_t evaluations) {
    result.circuits_evaluated += e.circuits_evaluated * evaluations;
    result.circuits_saved += e.circuits_saved * evaluations;
  };

  std::optional<Run> best;
  for (int attempt = 0; attempt <= config.restarts; ++attempt) {
    Run run;
    run.alpha = (attempt == 0 && initial) ? *initial : random_parameters(p, seeds());
    CostEvaluation current = cost.evaluate(run.alpha, stream++);
    count(current, 1);
    run.history.push_back(current.value);
    for (int it = 0; it < config.max_iterations && current.value > config.cost_tolerance && config.learning_rate > 0.0;
         ++it) {
      const Vector grad = cost.gradient(run.alpha, stream);
      stream += 2 * p + 1;
      count(current, 2 * p + 1);
      ++result.iterations;
      bool accepted = false;
      double eta = config.learning_rate;
      // Halve until the step no longer raises the cost.
      while (eta > 1e-12 * config.learning_rate) {
        const Vector trial = run.alpha - eta * grad;
        const CostEvaluation next = cost.evaluate(trial, stream++);
        count(next, 1);
        if (next.value <= current.value) {
          run.alpha = trial;
          current = next;
          accepted = true;
          break;
        }
        eta *= 0.5;
      }
      if (!accepted) {
        run.stalled = true;
        break;
      }
      run.history.push_back(current.value);
      const auto h = run.history.size();
      if (h > static_cast<std::size_t>(config.stall_window) &&
          run.history[h - 1 - static_cast<std::size_t>(config.stall_window)] - current.value < config.stall_threshold) {
        run.stalled = true;
        break;
      }
    }
    run.cost = current.value;
    const bool done = run.cost <= config.cost_tolerance;
    const bool stalled = run.stalled;
    if (!best || run.cost < best->cost) best = std::move(run);
    if (done || !stalled || attempt == config.restarts) break;
    ++result.restarts_used;
  }

  result.alpha = best->alpha;
  result.cost_history = best->history;
  result.cost = best->cost;
  result.converged = best->cost <= config.cost_tolerance;
  return result;
}

}  // namespace qemtp::vqls
