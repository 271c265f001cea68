#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatetrim/circuit.hpp"

namespace gatetrim {

int entangling_count(const Circuit& circuit);

/// Longest chain of entangling gates under the qubit dependency order
/// (as-soon-as-possible layering; one-qubit gates add no depth).
int entangling_depth(const Circuit& circuit);

enum class FidelityConvention {
  Trace,         ///< |tr(u^dagger v)| / d
  TraceSquared,  ///< |tr(u^dagger v)|^2 / d^2
};

/// Phase-invariant overlap of two unitaries of equal dimension. Throws
/// std::invalid_argument on a dimension mismatch.
double idealized_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v,
                          FidelityConvention convention = FidelityConvention::Trace);

/// F * p^n: idealized fidelity discounted by n entangling gates of fidelity p.
double estimated_fidelity(double idealized, int entangling_gates, double gate_fidelity);

/// Outcome of optimizing one window.
struct WindowReport {
  int pass = 0;
  /// Host qubits of the window, ascending; local qubit i is qubits[i].
  std::vector<int> qubits;
  /// Gate span [begin, end) in the circuit the pass ran on.
  int begin = 0;
  int end = 0;
  int input_entangling = 0;
  int output_entangling = 0;
  int iterations = 0;
  int evaluations = 0;
  std::string termination;
  /// Positions (in the pass input) of deleted gates.
  std::vector<int> eliminated;
  double idealized_fidelity = 1.0;
  /// Result discarded for falling below the fidelity floor.
  bool fell_back = false;
  double wall_time = 0.0;
};

struct OptimizationReport {
  int input_entangling = 0;
  int output_entangling = 0;
  int input_depth = 0;
  int output_depth = 0;
  /// Exact whole-circuit value; absent above the dense simulation limit.
  std::optional<double> idealized_fidelity;
  double estimated_fidelity = 1.0;
  double wall_time = 0.0;
  std::vector<WindowReport> windows;
};

}  // namespace gatetrim
