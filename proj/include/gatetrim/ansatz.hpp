#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gatetrim/circuit.hpp"

namespace gatetrim {

struct AnsatzGate {
  GateKind kind = GateKind::RZ;
  std::vector<int> qubits;
  int parameter = 0;
  std::optional<double> error_rate;
};

/// Fixed gate structure of a native circuit with one free angle per gate.
struct Ansatz {
  int n_qubits = 0;
  int n_params = 0;
  std::vector<AnsatzGate> structure;
  /// Angles of the source circuit, indexed by parameter.
  std::vector<double> theta0;
  double global_phase = 0.0;
  /// Parameters held at their current value by the optimizer. Empty means
  /// every parameter is free.
  std::vector<bool> frozen;
};

/// One fresh parameter per gate, numbered in gate order. Throws
/// std::invalid_argument naming the first non-native gate.
Ansatz ansatz_from_circuit(const Circuit& circuit);

/// Circuit with the ansatz structure and the given angles. Throws
/// std::invalid_argument on a length mismatch or a non-finite angle.
Circuit bind(const Ansatz& ansatz, std::span<const double> theta);

}  // namespace gatetrim
