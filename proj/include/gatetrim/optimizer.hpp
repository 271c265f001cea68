#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "gatetrim/ansatz.hpp"

namespace gatetrim {

struct Bounds {
  double lo;
  double hi;
};

struct OptimizerConfig {
  /// Number of (s, y) correction pairs kept by the quasi-Newton update.
  int memory = 10;
  int max_iterations = 500;
  /// Converged when the infinity norm of the projected gradient drops below this.
  double gradient_tolerance = 1e-8;
  /// Converged when an accepted step improves the merit by less than this,
  /// relative to max(|merit|, 1).
  double merit_tolerance = 1e-12;
  /// Per-parameter box. Empty means unbounded.
  std::vector<Bounds> bounds;
  /// Parameters whose objective has a |theta| kink at zero. Steps that would
  /// carry such a parameter across zero stop at zero instead. Empty means none.
  std::vector<bool> kink_at_zero;
  /// Extra starts from theta_init plus seeded Gaussian noise; the best wins.
  int restarts = 0;
  double restart_sigma = 0.1;
  std::uint64_t seed = 0;
};

/// Objective value at a point. `kink` may be empty; otherwise see
/// MeritEvaluation::kink.
struct ObjectiveValue {
  double value = 0.0;
  std::vector<double> gradient;
  std::vector<double> kink;
};

using Objective = std::function<ObjectiveValue(std::span<const double>)>;

enum class Termination { GradientConverged, MeritConverged, IterationCap };

std::string_view termination_name(Termination t);

struct OptimizationResult {
  std::vector<double> theta;
  double merit = 0.0;
  int iterations = 0;
  int evaluations = 0;
  Termination termination = Termination::IterationCap;
  /// theta_init had to be clipped into the bounds.
  bool clipped_start = false;
};

/// Maximizes `objective` over the box with a limited-memory quasi-Newton
/// method: two-loop recursion, gradient projection onto the box and
/// backtracking Armijo line search along the projected path. Internally it
/// minimizes -objective.
///
/// Accepted iterates never decrease the objective and always lie inside the
/// bounds. The result is deterministic for a given config. Throws
/// OptimizerAbort if the objective returns a non-finite value or gradient.
OptimizationResult maximize(const Objective& objective, std::span<const double> theta_init,
                            const OptimizerConfig& config);

/// Default box for an ansatz: [-pi, pi] for entangling angles, [-2pi, 2pi]
/// for one-qubit angles, and a degenerate box at theta0 for frozen parameters.
std::vector<Bounds> default_bounds(const Ansatz& ansatz);

}  // namespace gatetrim
