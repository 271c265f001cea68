#pragma once

#include <utility>
#include <vector>

#include "gatetrim/circuit.hpp"
#include "gatetrim/merit.hpp"
#include "gatetrim/metrics.hpp"
#include "gatetrim/optimizer.hpp"

namespace gatetrim {

/// Contiguous run of gates that touches at most window_size qubits.
struct Window {
  /// Host qubits, ascending. Local qubit i of `circuit` is qubits[i].
  std::vector<int> qubits;
  int begin = 0;
  int end = 0;
  /// The gates of [begin, end) relabeled onto local qubits, global phase 0.
  Circuit circuit;
};

/// Greedy forward scan: each window starts at the first gate not yet
/// covered and absorbs following gates while the union of their qubits stays
/// within window_size. Every gate lands in exactly one window. If
/// first_window_cap > 0 the first window holds at most that many gates, which
/// shifts all later boundaries.
std::vector<Window> extract_windows(const Circuit& circuit, int window_size,
                                    int first_window_cap = 0);

struct PassConfig {
  int window_size = 4;
  /// Gates whose optimized |angle| is at most this are deleted.
  double elimination_threshold = 1e-4;
  /// Windows whose optimized idealized fidelity falls below this are left
  /// as they were.
  double fidelity_floor = 0.0;
  /// Convention for every fidelity in the report and for the floor.
  FidelityConvention fidelity_convention = FidelityConvention::Trace;
  NoiseModel noise;
  OptimizerConfig optimizer;
  /// After the first search, try pinning each surviving entangling angle at
  /// zero (smallest noise contribution first) and keep the pin whenever the
  /// re-optimized merit is higher. Breaks ties the plain search cannot, such
  /// as two identical gates that could merge.
  bool probe_eliminations = true;
  /// Polish the pruned window on the noise-free overlap rather than the
  /// noisy merit.
  bool polish_noise_free = true;
  /// Extra passes whose windows are offset from the previous pass's.
  int shifted_passes = 0;
  /// Worker threads for independent windows.
  int jobs = 1;
};

/// Optimizes one window in isolation. The returned circuit lives on the
/// window's local qubits and carries the global phase that aligns its unitary
/// with the window's original unitary.
std::pair<Circuit, WindowReport> optimize_window(const Window& window, const PassConfig& config);

/// Windows the circuit, optimizes every window and stitches the results back
/// in order. The input must be in the native gate set.
std::pair<Circuit, OptimizationReport> optimize_circuit(const Circuit& circuit,
                                                        const PassConfig& config);

}  // namespace gatetrim
