#include "gatetrim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "gatetrim/errors.hpp"

namespace gatetrim {

namespace {

using Vec = std::vector<double>;

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double sign(double x) { return (x > 0) - (x < 0); }

/// Minimization view of the user objective: f = -value, g = -gradient.
class Problem {
 public:
  Problem(const Objective& objective, const OptimizerConfig& config, std::size_t n)
      : objective_(objective), n_(n) {
    lo_.assign(n, -std::numeric_limits<double>::infinity());
    hi_.assign(n, std::numeric_limits<double>::infinity());
    if (!config.bounds.empty()) {
      if (config.bounds.size() != n) throw std::invalid_argument("bounds size mismatch");
      for (std::size_t i = 0; i < n; ++i) {
        if (!(config.bounds[i].lo <= config.bounds[i].hi)) {
          throw std::invalid_argument("lower bound exceeds upper bound");
        }
        lo_[i] = config.bounds[i].lo;
        hi_[i] = config.bounds[i].hi;
      }
    }
    kink_.assign(n, false);
    if (!config.kink_at_zero.empty()) {
      if (config.kink_at_zero.size() != n) throw std::invalid_argument("kink mask size mismatch");
      kink_ = config.kink_at_zero;
    }
  }

  struct Point {
    Vec x;
    double f = 0.0;
    Vec g;
    Vec kink;
  };

  Point evaluate(const Vec& x) {
    ++evaluations_;
    ObjectiveValue v = objective_(x);
    bool finite = std::isfinite(v.value) && v.gradient.size() == n_;
    for (double d : v.gradient) finite = finite && std::isfinite(d);
    if (!finite) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "non-finite objective or gradient at theta = [";
      for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
      msg << "]";
      throw OptimizerAbort(msg.str());
    }
    Point p{x, -v.value, Vec(n_), Vec(n_, 0.0)};
    for (std::size_t i = 0; i < n_; ++i) p.g[i] = -v.gradient[i];
    if (!v.kink.empty()) {
      for (std::size_t i = 0; i < n_; ++i) p.kink[i] = v.kink[i];
    }
    return p;
  }

  bool clip(Vec& x) const {
    bool changed = false;
    for (std::size_t i = 0; i < n_; ++i) {
      const double c = std::clamp(x[i], lo_[i], hi_[i]);
      changed = changed || c != x[i];
      x[i] = c;
    }
    return changed;
  }

  /// Steepest-descent direction of the nonsmooth minimization problem,
  /// negated: zero where a bound or a kink blocks all descent.
  Vec pseudo_gradient(const Point& p) const {
    Vec pg(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double gi = p.g[i];
      if (p.x[i] == 0.0 && p.kink[i] > 0.0) {
        if (gi + p.kink[i] < 0.0) {
          gi += p.kink[i];
        } else if (gi - p.kink[i] > 0.0) {
          gi -= p.kink[i];
        } else {
          gi = 0.0;
        }
      }
      if ((p.x[i] <= lo_[i] && gi > 0.0) || (p.x[i] >= hi_[i] && gi < 0.0) || lo_[i] == hi_[i]) {
        gi = 0.0;
      }
      pg[i] = gi;
    }
    return pg;
  }

  /// Point reached by a step of length alpha along d, kept in the orthant of
  /// the kink parameters and inside the box.
  Vec step(const Vec& x, const Vec& d, const Vec& orthant, double alpha) const {
    Vec out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      double v = x[i] + alpha * d[i];
      if (kink_[i] && sign(v) != orthant[i]) v = 0.0;
      out[i] = std::clamp(v, lo_[i], hi_[i]);
    }
    return out;
  }

  /// Drops direction components that a bound or kink blocks, and kink
  /// components pointing against their descent sign.
  void align(Vec& d, const Vec& pg) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (pg[i] == 0.0 || (kink_[i] && sign(d[i]) != sign(-pg[i]))) d[i] = 0.0;
    }
  }

  Vec orthant(const Point& p, const Vec& pg) const {
    Vec o(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) o[i] = p.x[i] != 0.0 ? sign(p.x[i]) : sign(-pg[i]);
    return o;
  }

  int evaluations() const { return evaluations_; }

 private:
  const Objective& objective_;
  std::size_t n_;
  Vec lo_;
  Vec hi_;
  std::vector<bool> kink_;
  int evaluations_ = 0;
};

struct Pair {
  Vec s;
  Vec y;
  double rho;
};

Vec two_loop(const std::deque<Pair>& memory, const Vec& grad) {
  Vec q = grad;
  std::vector<double> alpha(memory.size());
  for (std::size_t j = memory.size(); j-- > 0;) {
    alpha[j] = memory[j].rho * dot(memory[j].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[j] * memory[j].y[i];
  }
  const Pair& last = memory.back();
  const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
  for (double& v : q) v *= gamma;
  for (std::size_t j = 0; j < memory.size(); ++j) {
    const double beta = memory[j].rho * dot(memory[j].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[j] - beta) * memory[j].s[i];
  }
  for (double& v : q) v = -v;
  return q;
}

OptimizationResult run_once(Problem& problem, Vec x, const OptimizerConfig& config) {
  OptimizationResult result;
  result.clipped_start = problem.clip(x);
  Problem::Point cur = problem.evaluate(x);
  std::deque<Pair> memory;
  result.termination = Termination::IterationCap;

  for (int iter = 0; iter < config.max_iterations;) {
    const Vec pg = problem.pseudo_gradient(cur);
    if (inf_norm(pg) <= config.gradient_tolerance) {
      result.termination = Termination::GradientConverged;
      break;
    }

    Vec d;
    if (memory.empty()) {
      d = pg;
      for (double& v : d) v = -v;
    } else {
      d = two_loop(memory, pg);
    }
    problem.align(d, pg);
    if (dot(pg, d) >= 0.0) {
      memory.clear();
      d = pg;
      for (double& v : d) v = -v;
    }

    const Vec orth = problem.orthant(cur, pg);
    double alpha = memory.empty() ? std::min(1.0, 1.0 / inf_norm(d)) : 1.0;
    bool accepted = false;
    Problem::Point next;
    for (int k = 0; k < kMaxBacktracks; ++k, alpha *= 0.5) {
      Vec x_new = problem.step(cur.x, d, orth, alpha);
      if (x_new == cur.x) break;
      Vec delta(x_new.size());
      for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = x_new[i] - cur.x[i];
      next = problem.evaluate(x_new);
      if (next.f <= cur.f + kArmijo * dot(pg, delta)) {
        accepted = true;
        break;
      }
    }

    if (!accepted) {
      if (!memory.empty()) {
        // Retry from a steepest-descent direction before giving up.
        memory.clear();
        continue;
      }
      result.termination = Termination::MeritConverged;
      break;
    }

    ++iter;
    Pair pair{Vec(cur.x.size()), Vec(cur.x.size()), 0.0};
    for (std::size_t i = 0; i < pair.s.size(); ++i) {
      pair.s[i] = next.x[i] - cur.x[i];
      pair.y[i] = next.g[i] - cur.g[i];
    }
    const double sy = dot(pair.s, pair.y);
    const double yy = dot(pair.y, pair.y);
    if (sy > std::numeric_limits<double>::epsilon() * yy && yy > 0.0) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (static_cast<int>(memory.size()) > config.memory) memory.pop_front();
    }

    const double improvement = cur.f - next.f;
    const double scale = std::max({std::abs(cur.f), std::abs(next.f), 1.0});
    cur = std::move(next);
    result.iterations = iter;
    if (improvement <= config.merit_tolerance * scale) {
      result.termination = Termination::MeritConverged;
      break;
    }
  }

  result.theta = cur.x;
  result.merit = -cur.f;
  return result;
}

}  // namespace

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::GradientConverged:
      return "gradient-converged";
    case Termination::MeritConverged:
      return "merit-converged";
    case Termination::IterationCap:
      return "iteration-cap";
  }
  return "iteration-cap";
}

OptimizationResult maximize(const Objective& objective, std::span<const double> theta_init,
                            const OptimizerConfig& config) {
  if (config.memory < 1) throw std::invalid_argument("memory must be at least 1");
  Problem problem(objective, config, theta_init.size());
  const Vec start(theta_init.begin(), theta_init.end());

  OptimizationResult best = run_once(problem, start, config);
  bool clipped = best.clipped_start;
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> noise(0.0, config.restart_sigma);
  for (int r = 0; r < config.restarts; ++r) {
    Vec x = start;
    for (double& v : x) v += noise(rng);
    OptimizationResult trial = run_once(problem, std::move(x), config);
    if (trial.merit > best.merit) best = std::move(trial);
  }
  best.clipped_start = clipped;
  best.evaluations = problem.evaluations();
  return best;
}

std::vector<Bounds> default_bounds(const Ansatz& ansatz) {
  using std::numbers::pi;
  std::vector<Bounds> b(ansatz.n_params, Bounds{-2 * pi, 2 * pi});
  for (const auto& g : ansatz.structure) {
    if (is_entangling(g.kind)) b[g.parameter] = {-pi, pi};
  }
  for (std::size_t p = 0; p < ansatz.frozen.size(); ++p) {
    if (ansatz.frozen[p]) b[p] = {ansatz.theta0[p], ansatz.theta0[p]};
  }
  return b;
}

}  // namespace gatetrim
