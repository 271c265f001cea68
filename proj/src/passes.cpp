#include "gatetrim/passes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "gatetrim/ansatz.hpp"
#include "gatetrim/errors.hpp"

namespace gatetrim {

namespace {

using Clock = std::chrono::steady_clock;

/// Entanglers at or beyond this angle are folded after a search. Past the
/// peak of the quadratic noise shape the fold always pays for itself.
constexpr double kFoldAngle = 3 * std::numbers::pi / 4;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Window make_window(const Circuit& circuit, int begin, int end, const std::set<int>& qubits) {
  Window w;
  w.qubits.assign(qubits.begin(), qubits.end());
  w.begin = begin;
  w.end = end;
  w.circuit.n_qubits = static_cast<int>(w.qubits.size());
  for (int i = begin; i < end; ++i) {
    Gate g = circuit.gates[i];
    for (int& q : g.qubits) {
      q = static_cast<int>(std::lower_bound(w.qubits.begin(), w.qubits.end(), q) - w.qubits.begin());
    }
    w.circuit.gates.push_back(std::move(g));
  }
  return w;
}

struct Search {
  std::vector<double> theta;
  double merit = 0.0;
  int iterations = 0;
  int evaluations = 0;
  Termination termination = Termination::IterationCap;

  void absorb(const OptimizationResult& r) {
    theta = r.theta;
    merit = r.merit;
    termination = r.termination;
  }
  void count(const OptimizationResult& r) {
    iterations += r.iterations;
    evaluations += r.evaluations;
  }
};

/// Window circuit being rewritten. origin[i] is the window position of gate
/// i, or -1 for gates added by folding.
struct Work {
  Circuit circuit;
  std::vector<int> origin;
};

NoiseModel work_noise(const Work& work, const NoiseModel& window_noise) {
  NoiseModel noise = window_noise;
  noise.overrides.clear();
  for (std::size_t i = 0; i < work.origin.size(); ++i) {
    const int o = work.origin[i];
    if (o < 0) continue;
    if (auto it = window_noise.overrides.find(o); it != window_noise.overrides.end()) {
      noise.overrides[static_cast<int>(i)] = it->second;
    }
  }
  return noise;
}

void set_angles(Work& work, const std::vector<double>& theta) {
  for (std::size_t i = 0; i < work.circuit.gates.size(); ++i) work.circuit.gates[i].angle = theta[i];
}

/// Rewrites every entangler with |angle| >= min_angle (at least pi/2) as the
/// same gate shifted by pi, preceded by pi rotations on its qubits. The
/// unitary is unchanged and the shifted angle carries less noise. Returns
/// false if nothing changed.
bool fold_entanglers(Work& work, double min_angle) {
  using std::numbers::pi;
  Work out;
  out.circuit.n_qubits = work.circuit.n_qubits;
  out.circuit.global_phase = work.circuit.global_phase;
  bool changed = false;
  for (std::size_t i = 0; i < work.circuit.gates.size(); ++i) {
    Gate g = work.circuit.gates[i];
    if (is_entangling(g.kind) && std::abs(g.angle) >= std::max(min_angle, pi / 2)) {
      const double s = g.angle > 0 ? 1.0 : -1.0;
      const GateKind second = g.kind == GateKind::RZZ ? GateKind::RZ : GateKind::RX;
      out.circuit.gates.push_back({GateKind::RZ, {g.qubits[0]}, pi, std::nullopt});
      out.circuit.gates.push_back({second, {g.qubits[1]}, pi, std::nullopt});
      out.origin.insert(out.origin.end(), {-1, -1});
      out.circuit.global_phase += s * pi / 2;
      g.angle -= s * pi;
      changed = true;
    }
    out.circuit.gates.push_back(std::move(g));
    out.origin.push_back(work.origin[i]);
  }
  if (changed) work = std::move(out);
  return changed;
}

Objective merit_objective(const UnitaryMatrix& target, const Ansatz& ansatz,
                          const NoiseModel& noise) {
  return [&target, &ansatz, &noise](std::span<const double> theta) {
    MeritEvaluation ev = evaluate(target, ansatz, theta, noise);
    return ObjectiveValue{ev.merit, std::move(ev.gradient), std::move(ev.kink)};
  };
}

OptimizerConfig search_config(const Ansatz& ansatz, const NoiseModel& noise,
                              const OptimizerConfig& base) {
  OptimizerConfig cfg = base;
  cfg.bounds = default_bounds(ansatz);
  cfg.kink_at_zero.assign(ansatz.n_params, false);
  const auto rates = gate_error_rates(ansatz, noise);
  const bool kinked = xi_slope_at_zero(noise.shape) > 0.0;
  for (std::size_t i = 0; i < ansatz.structure.size(); ++i) {
    if (kinked && rates[i] > 0.0) cfg.kink_at_zero[ansatz.structure[i].parameter] = true;
  }
  return cfg;
}

}  // namespace

std::vector<Window> extract_windows(const Circuit& circuit, int window_size,
                                    int first_window_cap) {
  if (window_size < 2 || window_size > kDefaultWindowLimit) {
    throw std::invalid_argument("window size must be between 2 and " +
                                std::to_string(kDefaultWindowLimit));
  }
  std::vector<Window> windows;
  const int m = static_cast<int>(circuit.gates.size());
  int begin = 0;
  while (begin < m) {
    std::set<int> qubits;
    int end = begin;
    const int cap = windows.empty() && first_window_cap > 0 ? first_window_cap : m;
    while (end < m && end - begin < cap) {
      std::set<int> grown = qubits;
      grown.insert(circuit.gates[end].qubits.begin(), circuit.gates[end].qubits.end());
      if (static_cast<int>(grown.size()) > window_size) break;
      qubits = std::move(grown);
      ++end;
    }
    windows.push_back(make_window(circuit, begin, end, qubits));
    begin = end;
  }
  return windows;
}

std::pair<Circuit, WindowReport> optimize_window(const Window& window, const PassConfig& config) {
  const auto start = Clock::now();
  const Circuit& sub = window.circuit;
  const UnitaryMatrix target = unitary_of(sub);
  const double dim = static_cast<double>(target.rows());

  WindowReport report;
  report.qubits = window.qubits;
  report.begin = window.begin;
  report.end = window.end;
  report.input_entangling = entangling_count(sub);

  // Noise overrides are keyed by host position; move them onto the window.
  NoiseModel window_noise = config.noise;
  window_noise.overrides.clear();
  for (const auto& [pos, rate] : config.noise.overrides) {
    if (pos >= window.begin && pos < window.end) window_noise.overrides[pos - window.begin] = rate;
  }

  // Start from angles wrapped into [-pi, pi]. Shifting an angle by 2pi only
  // flips the sign of the gate, which the trace magnitude ignores.
  Work work{sub, {}};
  for (std::size_t i = 0; i < sub.gates.size(); ++i) {
    work.circuit.gates[i].angle = std::remainder(sub.gates[i].angle, 2 * std::numbers::pi);
    work.origin.push_back(static_cast<int>(i));
  }

  Search search;
  auto run_search = [&] {
    const Ansatz ansatz = ansatz_from_circuit(work.circuit);
    const NoiseModel noise = work_noise(work, window_noise);
    const auto r = maximize(merit_objective(target, ansatz, noise), ansatz.theta0,
                            search_config(ansatz, noise, config.optimizer));
    search.absorb(r);
    search.count(r);
    set_angles(work, r.theta);
  };
  run_search();
  if (fold_entanglers(work, kFoldAngle)) run_search();

  if (config.probe_eliminations) {
    const Ansatz ansatz = ansatz_from_circuit(work.circuit);
    const NoiseModel noise = work_noise(work, window_noise);
    const Objective objective = merit_objective(target, ansatz, noise);
    OptimizerConfig cfg = search_config(ansatz, noise, config.optimizer);
    const auto rates = gate_error_rates(ansatz, noise);
    std::vector<std::pair<double, int>> order;
    for (std::size_t i = 0; i < ansatz.structure.size(); ++i) {
      const int p = ansatz.structure[i].parameter;
      if (!is_entangling(ansatz.structure[i].kind) || rates[i] == 0.0) continue;
      if (std::abs(search.theta[p]) <= config.elimination_threshold) continue;
      order.emplace_back(xi(search.theta[p], noise.shape), p);
    }
    std::sort(order.begin(), order.end());
    for (const auto& [unused, p] : order) {
      OptimizerConfig pinned = cfg;
      pinned.bounds[p] = {0.0, 0.0};
      std::vector<double> trial = search.theta;
      trial[p] = 0.0;
      const auto r = maximize(objective, trial, pinned);
      search.count(r);
      const double margin = config.optimizer.merit_tolerance * std::max(1.0, search.merit);
      if (r.merit > search.merit + margin) {
        search.absorb(r);
        cfg = std::move(pinned);
      }
    }
    set_angles(work, search.theta);
  }

  // Delete gates that reached zero, then polish what is left. Polishing can
  // leave an entangler at +-pi, which is local; fold it away and repeat.
  auto prune = [&] {
    Work kept;
    kept.circuit.n_qubits = sub.n_qubits;
    for (std::size_t i = 0; i < work.circuit.gates.size(); ++i) {
      const Gate& g = work.circuit.gates[i];
      if (std::abs(g.angle) <= config.elimination_threshold) {
        if (work.origin[i] >= 0) report.eliminated.push_back(window.begin + work.origin[i]);
        continue;
      }
      kept.circuit.gates.push_back(g);
      kept.origin.push_back(work.origin[i]);
    }
    work = std::move(kept);
  };
  auto polish = [&] {
    Ansatz polished = ansatz_from_circuit(work.circuit);
    NoiseModel polish_noise = work_noise(work, window_noise);
    if (config.polish_noise_free) {
      polish_noise = NoiseModel{0.0, {}, window_noise.shape};
      for (auto& g : polished.structure) g.error_rate.reset();
    }
    const auto r = maximize(merit_objective(target, polished, polish_noise), polished.theta0,
                            search_config(polished, polish_noise, config.optimizer));
    search.count(r);
    search.termination = r.termination;
    set_angles(work, r.theta);
  };
  const double removable = std::numbers::pi - config.elimination_threshold;
  fold_entanglers(work, kFoldAngle);
  prune();
  polish();
  for (int round = 0; round < 3 && fold_entanglers(work, removable); ++round) {
    prune();
    polish();
  }
  std::sort(report.eliminated.begin(), report.eliminated.end());

  Circuit& result_circuit = work.circuit;

  const UnitaryMatrix result = unitary_of(result_circuit);
  const Complex overlap = (target.adjoint() * result).trace();
  double fidelity = std::min(1.0, std::abs(overlap) / dim);
  if (config.fidelity_convention == FidelityConvention::TraceSquared) fidelity *= fidelity;

  report.iterations = search.iterations;
  report.evaluations = search.evaluations;
  report.termination = std::string(termination_name(search.termination));
  if (fidelity < config.fidelity_floor) {
    report.fell_back = true;
    report.eliminated.clear();
    report.output_entangling = report.input_entangling;
    report.idealized_fidelity = 1.0;
    report.wall_time = seconds_since(start);
    return {sub, report};
  }

  result_circuit.global_phase = std::abs(overlap) > 0.0 ? -std::arg(overlap) : 0.0;
  report.output_entangling = entangling_count(result_circuit);
  report.idealized_fidelity = fidelity;
  report.wall_time = seconds_since(start);
  return {std::move(result_circuit), std::move(report)};
}

std::pair<Circuit, OptimizationReport> optimize_circuit(const Circuit& circuit,
                                                        const PassConfig& config) {
  const auto start = Clock::now();
  validate(circuit);
  if (!is_native_circuit(circuit)) {
    throw std::invalid_argument("optimize_circuit needs a native circuit; rebase first");
  }
  if (config.elimination_threshold <= 0.0) {
    throw std::invalid_argument("elimination threshold must be positive");
  }

  OptimizationReport report;
  report.input_entangling = entangling_count(circuit);
  report.input_depth = entangling_depth(circuit);

  Circuit current = circuit;
  for (int pass = 0; pass <= config.shifted_passes; ++pass) {
    int cap = 0;
    if (pass > 0) {
      const auto first = extract_windows(current, config.window_size);
      cap = first.empty() ? 0 : std::max(1, (first.front().end - first.front().begin) / 2);
    }
    const auto windows = extract_windows(current, config.window_size, cap);
    std::vector<std::pair<Circuit, WindowReport>> results(windows.size());
    std::vector<std::exception_ptr> errors(windows.size());

    const int n_windows = static_cast<int>(windows.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, config.jobs)) \
    if (config.jobs > 1)
    for (int w = 0; w < n_windows; ++w) {
      try {
        results[w] = optimize_window(windows[w], config);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    }
    for (int w = 0; w < n_windows; ++w) {
      if (!errors[w]) continue;
      try {
        std::rethrow_exception(errors[w]);
      } catch (const OptimizerAbort& e) {
        throw OptimizerAbort("window " + std::to_string(w) + " (gates " +
                             std::to_string(windows[w].begin) + ".." +
                             std::to_string(windows[w].end - 1) + "): " + e.what());
      }
    }

    Circuit next;
    next.n_qubits = current.n_qubits;
    next.global_phase = current.global_phase;
    for (int w = 0; w < n_windows; ++w) {
      auto& [local, window_report] = results[w];
      next.global_phase += local.global_phase;
      for (Gate g : local.gates) {
        for (int& q : g.qubits) q = windows[w].qubits[q];
        next.gates.push_back(std::move(g));
      }
      window_report.pass = pass;
      report.windows.push_back(std::move(window_report));
    }
    current = std::move(next);
  }

  report.output_entangling = entangling_count(current);
  report.output_depth = entangling_depth(current);

  double fidelity = 1.0;
  if (circuit.n_qubits <= kDefaultWindowLimit) {
    fidelity = idealized_fidelity(unitary_of(circuit), unitary_of(current),
                                  config.fidelity_convention);
    report.idealized_fidelity = fidelity;
  } else {
    for (const auto& w : report.windows) fidelity *= w.idealized_fidelity;
  }
  report.estimated_fidelity =
      estimated_fidelity(fidelity, report.output_entangling, 1.0 - config.noise.default_error_rate);
  report.wall_time = seconds_since(start);
  return {std::move(current), std::move(report)};
}

}  // namespace gatetrim
