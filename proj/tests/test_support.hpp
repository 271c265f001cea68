#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "gatetrim/circuit.hpp"

namespace gatetrim::testing {

inline constexpr double kPi = std::numbers::pi;

struct RandomCircuitOptions {
  int min_qubits = 2;
  int max_qubits = 4;
  int max_gates = 20;
  /// Probability that a gate is entangling (when n >= 2).
  double entangling_share = 0.4;
  bool use_fecr = true;
};

/// Random circuit in the native gate set. Angles are uniform in [-pi, pi].
inline Circuit random_native_circuit(std::mt19937_64& rng, const RandomCircuitOptions& opt = {}) {
  std::uniform_int_distribution<int> nq(opt.min_qubits, opt.max_qubits);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Circuit c;
  c.n_qubits = nq(rng);
  const int m = std::uniform_int_distribution<int>(0, opt.max_gates)(rng);
  std::uniform_int_distribution<int> qubit(0, c.n_qubits - 1);
  const GateKind singles[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
  for (int i = 0; i < m; ++i) {
    Gate g;
    g.angle = angle(rng);
    if (c.n_qubits >= 2 && unit(rng) < opt.entangling_share) {
      g.kind = opt.use_fecr && unit(rng) < 0.3 ? GateKind::FECR : GateKind::RZZ;
      int a = qubit(rng);
      int b = qubit(rng);
      while (b == a) b = qubit(rng);
      g.qubits = {a, b};
    } else {
      g.kind = singles[std::uniform_int_distribution<int>(0, 2)(rng)];
      g.qubits = {qubit(rng)};
    }
    c.gates.push_back(std::move(g));
  }
  c.global_phase = angle(rng);
  return c;
}

/// Central difference of a scalar function along coordinate i.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> x, std::size_t i, double h) {
  const double x0 = x[i];
  x[i] = x0 + h;
  const double up = f(x);
  x[i] = x0 - h;
  const double down = f(x);
  return (up - down) / (2 * h);
}

/// Largest entrywise difference between two matrices of equal shape.
inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// |tr(a^dagger b)| / d, recomputed here so tests don't lean on metrics.
inline double overlap_fidelity(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return std::abs((a.adjoint() * b).trace()) / static_cast<double>(a.rows());
}

/// Small QFT circuit in the native gate set: 23 gates, five of them RZZ.
/// Columns are read left to right, top wire first.
inline Circuit qft2_circuit() {
  const double p = kPi;
  auto one = [](GateKind k, int q, double t) { return Gate{k, {q}, t, std::nullopt}; };
  auto zz = [](double t) { return Gate{GateKind::RZZ, {0, 1}, t, std::nullopt}; };
  Circuit c;
  c.n_qubits = 2;
  c.gates = {
      one(GateKind::RY, 0, p / 2),      one(GateKind::RY, 1, -p / 2),
      one(GateKind::RX, 0, p),          one(GateKind::RZ, 1, -3 * p / 4),
      zz(p / 2),                        one(GateKind::RY, 0, -p / 4),
      one(GateKind::RZ, 0, -p / 2),     zz(p / 2),
      one(GateKind::RY, 0, p / 4),      one(GateKind::RY, 1, p / 2),
      zz(p / 2),                        one(GateKind::RZ, 1, -p / 2),
      one(GateKind::RY, 0, p / 2),      one(GateKind::RY, 1, -p / 2),
      zz(p / 2),                        one(GateKind::RZ, 0, -p / 2),
      one(GateKind::RZ, 1, -p / 2),     one(GateKind::RY, 0, -p / 2),
      one(GateKind::RY, 1, p / 2),      zz(p / 2),
      one(GateKind::RZ, 0, p / 2),      one(GateKind::RZ, 1, p / 2),
      one(GateKind::RY, 1, p / 2),
  };
  return c;
}

}  // namespace gatetrim::testing
