#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "gatetrim/circuit.hpp"
#include "gatetrim/errors.hpp"
#include "gatetrim/kernels.hpp"

namespace gatetrim {

void validate(const Circuit& circuit) {
  if (circuit.n_qubits < 0) throw std::invalid_argument("negative qubit count");
  if (!std::isfinite(circuit.global_phase)) throw std::invalid_argument("non-finite global phase");
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    const std::string where = "gate " + std::to_string(i) + " (" +
                              std::string(gate_name(g.kind)) + "): ";
    if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
      throw std::invalid_argument(where + "wrong number of qubits");
    }
    std::set<int> seen;
    for (int q : g.qubits) {
      if (q < 0 || q >= circuit.n_qubits) {
        throw std::invalid_argument(where + "qubit " + std::to_string(q) + " out of range");
      }
      if (!seen.insert(q).second) throw std::invalid_argument(where + "duplicate qubit");
    }
    if (!std::isfinite(g.angle)) throw std::invalid_argument(where + "non-finite angle");
    if (g.error_rate && !is_entangling(g.kind)) {
      throw std::invalid_argument(where + "error rate on a one-qubit gate");
    }
    if (g.error_rate && (*g.error_rate < 0.0 || *g.error_rate >= 1.0)) {
      throw std::invalid_argument(where + "error rate outside [0, 1)");
    }
  }
}

UnitaryMatrix unitary_of(const Circuit& circuit, int limit) {
  if (circuit.n_qubits > limit) {
    throw WindowLimitError("circuit has " + std::to_string(circuit.n_qubits) +
                           " qubits; exact simulation is limited to " +
                           std::to_string(limit));
  }
  validate(circuit);
  std::vector<kernels::LocalOp> ops;
  ops.reserve(circuit.gates.size());
  for (const Gate& g : circuit.gates) ops.push_back(kernels::make_op(g.kind, g.qubits, g.angle));
  return kernels::product(ops, circuit.n_qubits, circuit.global_phase);
}

Format format_from_path(std::string_view path) {
  return path.ends_with(".json") ? Format::NativeJson : Format::Qasm;
}

bool is_native_circuit(const Circuit& circuit) {
  for (const Gate& g : circuit.gates) {
    if (!is_native(g.kind)) return false;
  }
  return true;
}

namespace {

using std::numbers::pi;

struct Emitter {
  Circuit& out;

  void one(GateKind kind, int q, double angle) { out.gates.push_back({kind, {q}, angle, {}}); }
  void two(GateKind kind, int a, int b, double angle, std::optional<double> rate) {
    out.gates.push_back({kind, {a, b}, angle, rate});
  }

  // RZZ(t) = (I (x) RY(-pi/2)) (RX(pi) (x) I) FECR(t) (I (x) RY(pi/2))
  void rzz_as_fecr(int a, int b, double angle, std::optional<double> rate) {
    one(GateKind::RY, b, pi / 2);
    two(GateKind::FECR, a, b, angle, rate);
    one(GateKind::RX, a, pi);
    one(GateKind::RY, b, -pi / 2);
  }

  // FECR(t) = -(RX(pi) (x) I) (I (x) RY(pi/2)) RZZ(t) (I (x) RY(-pi/2))
  void fecr_as_rzz(int a, int b, double angle, std::optional<double> rate) {
    one(GateKind::RY, b, -pi / 2);
    two(GateKind::RZZ, a, b, angle, rate);
    one(GateKind::RY, b, pi / 2);
    one(GateKind::RX, a, pi);
    out.global_phase += pi;
  }

  void rzz(int a, int b, double angle, std::optional<double> rate, Entangler target) {
    if (target == Entangler::Fecr) {
      rzz_as_fecr(a, b, angle, rate);
    } else {
      two(GateKind::RZZ, a, b, angle, rate);
    }
  }

  void fecr(int a, int b, double angle, std::optional<double> rate, Entangler target) {
    if (target == Entangler::Rzz) {
      fecr_as_rzz(a, b, angle, rate);
    } else {
      two(GateKind::FECR, a, b, angle, rate);
    }
  }
};

}  // namespace

Circuit rebase(const Circuit& circuit, Entangler target) {
  validate(circuit);
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.global_phase = circuit.global_phase;
  out.gates.reserve(circuit.gates.size());
  Emitter emit{out};

  for (const Gate& g : circuit.gates) {
    const int a = g.qubits[0];
    const int b = g.qubits.size() > 1 ? g.qubits[1] : -1;
    switch (g.kind) {
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ:
        out.gates.push_back(g);
        break;
      case GateKind::RZZ:
        emit.rzz(a, b, g.angle, g.error_rate, target);
        break;
      case GateKind::FECR:
        emit.fecr(a, b, g.angle, g.error_rate, target);
        break;
      case GateKind::ECR:
        emit.fecr(a, b, pi / 2, g.error_rate, target);
        break;
      case GateKind::H:
        // H = i * RY(pi/2) RZ(pi)
        emit.one(GateKind::RZ, a, pi);
        emit.one(GateKind::RY, a, pi / 2);
        out.global_phase += pi / 2;
        break;
      case GateKind::X:
        emit.one(GateKind::RX, a, pi);
        out.global_phase += pi / 2;
        break;
      case GateKind::Z:
        emit.one(GateKind::RZ, a, pi);
        out.global_phase += pi / 2;
        break;
      case GateKind::S:
        emit.one(GateKind::RZ, a, pi / 2);
        out.global_phase += pi / 4;
        break;
      case GateKind::SDG:
        emit.one(GateKind::RZ, a, -pi / 2);
        out.global_phase -= pi / 4;
        break;
      case GateKind::T:
        emit.one(GateKind::RZ, a, pi / 4);
        out.global_phase += pi / 8;
        break;
      case GateKind::TDG:
        emit.one(GateKind::RZ, a, -pi / 4);
        out.global_phase -= pi / 8;
        break;
      case GateKind::CX:
        // CZ = e^{-i pi/4} (RZ(-pi/2) (x) RZ(-pi/2)) RZZ(pi/2), conjugated by
        // RY(-+pi/2) on the target.
        emit.one(GateKind::RY, b, -pi / 2);
        emit.rzz(a, b, pi / 2, g.error_rate, target);
        emit.one(GateKind::RZ, a, -pi / 2);
        emit.one(GateKind::RZ, b, -pi / 2);
        emit.one(GateKind::RY, b, pi / 2);
        out.global_phase -= pi / 4;
        break;
    }
  }
  return out;
}

}  // namespace gatetrim
