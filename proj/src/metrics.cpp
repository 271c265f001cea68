#include "gatetrim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace gatetrim {

int entangling_count(const Circuit& circuit) {
  return static_cast<int>(std::count_if(circuit.gates.begin(), circuit.gates.end(),
                                        [](const Gate& g) { return is_entangling(g.kind); }));
}

int entangling_depth(const Circuit& circuit) {
  std::vector<int> level(circuit.n_qubits, 0);
  int depth = 0;
  for (const Gate& g : circuit.gates) {
    if (!is_entangling(g.kind)) continue;
    const int l = std::max(level.at(g.qubits[0]), level.at(g.qubits[1])) + 1;
    level[g.qubits[0]] = level[g.qubits[1]] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

double idealized_fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v,
                          FidelityConvention convention) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
    throw std::invalid_argument("fidelity of unitaries with different dimensions");
  }
  const auto d = static_cast<double>(u.rows());
  // tr(u^dagger v) = sum_ij conj(u_ij) v_ij
  const double f = std::abs((u.conjugate().array() * v.array()).sum()) / d;
  const double clamped = std::min(f, 1.0);
  return convention == FidelityConvention::Trace ? clamped : clamped * clamped;
}

double estimated_fidelity(double idealized, int entangling_gates, double gate_fidelity) {
  return idealized * std::pow(gate_fidelity, entangling_gates);
}

}  // namespace gatetrim
