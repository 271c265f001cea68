#include "gatetrim/ansatz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gatetrim {

Ansatz ansatz_from_circuit(const Circuit& circuit) {
  validate(circuit);
  Ansatz a;
  a.n_qubits = circuit.n_qubits;
  a.global_phase = circuit.global_phase;
  a.structure.reserve(circuit.gates.size());
  a.theta0.reserve(circuit.gates.size());
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    if (!is_native(g.kind)) {
      throw std::invalid_argument("gate " + std::to_string(i) + " ('" +
                                  std::string(gate_name(g.kind)) +
                                  "') is not in the native gate set; rebase first");
    }
    a.structure.push_back({g.kind, g.qubits, a.n_params++, g.error_rate});
    a.theta0.push_back(g.angle);
  }
  return a;
}

Circuit bind(const Ansatz& ansatz, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != ansatz.n_params) {
    throw std::invalid_argument("expected " + std::to_string(ansatz.n_params) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  for (double t : theta) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite parameter value");
  }
  Circuit c;
  c.n_qubits = ansatz.n_qubits;
  c.global_phase = ansatz.global_phase;
  c.gates.reserve(ansatz.structure.size());
  for (const auto& g : ansatz.structure) {
    c.gates.push_back({g.kind, g.qubits, theta[g.parameter], g.error_rate});
  }
  return c;
}

}  // namespace gatetrim
