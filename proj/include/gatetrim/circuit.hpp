#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gatetrim/gates.hpp"

namespace gatetrim {

struct Gate {
  GateKind kind = GateKind::RZ;
  std::vector<int> qubits;
  double angle = 0.0;
  /// Per-gate two-qubit error rate; only meaningful on entangling gates.
  std::optional<double> error_rate;

  bool operator==(const Gate&) const = default;
};

/// Ordered gate list. Gates apply in list order, so the unitary is
/// e^{i*global_phase} * G_m * ... * G_2 * G_1.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  double global_phase = 0.0;

  bool operator==(const Circuit&) const = default;
};

/// Throws std::invalid_argument if a gate has the wrong qubit count, a
/// duplicate or out-of-range qubit, or an error rate on a one-qubit gate.
void validate(const Circuit& circuit);

/// Exact unitary of the circuit, global phase included. Throws
/// WindowLimitError when n_qubits exceeds `limit`.
UnitaryMatrix unitary_of(const Circuit& circuit, int limit = kDefaultWindowLimit);

enum class Format { NativeJson, Qasm };

/// Picks a format from a file extension: ".json" is native JSON, everything
/// else is the QASM subset.
Format format_from_path(std::string_view path);

/// Parses circuit text. Errors: ParseError (with line/column),
/// UnsupportedGateError, QubitRangeError.
Circuit parse(std::string_view text, Format format);

/// Serializes to text that parse() maps back to an equal Circuit. The QASM
/// form cannot carry per-gate error rates; use native JSON for those.
std::string serialize(const Circuit& circuit, Format format);

/// Which two-qubit form rebase() should produce.
enum class Entangler {
  Keep,  ///< cx becomes rzz, ecr becomes fecr, native gates are untouched
  Rzz,   ///< every entangler ends up as rzz
  Fecr,  ///< every entangler ends up as fecr
};

/// Rewrites the circuit into {RX, RY, RZ, RZZ, FECR}, preserving the unitary
/// exactly (global phase included). A circuit already in the requested form
/// is returned unchanged.
Circuit rebase(const Circuit& circuit, Entangler target = Entangler::Keep);

/// True when every gate is one of the five native kinds.
bool is_native_circuit(const Circuit& circuit);

}  // namespace gatetrim
