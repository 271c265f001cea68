#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace gatetrim {

using Complex = std::complex<double>;

/// Dense complex matrix. Used both for single gates (2x2, 4x4) and for whole
/// window unitaries (up to 32x32).
using GateMatrix = Eigen::MatrixXcd;
using UnitaryMatrix = Eigen::MatrixXcd;

/// Largest register that is ever simulated densely.
inline constexpr int kDefaultWindowLimit = 5;

/// Gate vocabulary. The first five kinds form the native parameterized set
/// that the optimizer works on; the remaining kinds are fixed gates accepted
/// on input and removed by rebase().
enum class GateKind : std::uint8_t {
  RX,
  RY,
  RZ,
  RZZ,
  FECR,
  // fixed gates
  H,
  X,
  Z,
  S,
  SDG,
  T,
  TDG,
  CX,
  ECR,
};

int arity(GateKind kind);
bool is_entangling(GateKind kind);
/// True for the parameterized kinds RX, RY, RZ, RZZ, FECR.
bool is_native(GateKind kind);

/// Lower-case mnemonic ("rx", "rzz", "fecr", "cx", ...).
std::string_view gate_name(GateKind kind);
/// Inverse of gate_name(); returns false when the name is unknown.
bool gate_kind_from_name(std::string_view name, GateKind& kind);

/// Matrix of `kind` at angle `theta` (ignored for fixed gates).
///
///   RX(t)   = [[c, -is], [-is, c]]
///   RY(t)   = [[c, -s], [s, c]]
///   RZ(t)   = diag(e^{-it/2}, e^{it/2})
///   RZZ(t)  = diag(e^{-it/2}, e^{it/2}, e^{it/2}, e^{-it/2})
///   FECR(t) = [[0, 0, ic, -s], [0, 0, -s, ic], [ic, s, 0, 0], [s, ic, 0, 0]]
///
/// with c = cos(t/2), s = sin(t/2). FECR(pi/2) is the echoed cross-resonance
/// gate. Two-qubit matrices are indexed by 2*b0 + b1 where b0 is the bit of
/// the first listed qubit.
GateMatrix gate_matrix(GateKind kind, double theta);

/// Entrywise d/dtheta of gate_matrix(). Throws std::invalid_argument for
/// fixed (non-parameterized) kinds.
GateMatrix gate_matrix_derivative(GateKind kind, double theta);

/// Embeds a 2^k x 2^k gate matrix acting on `qubits` into an n-qubit operator.
///
/// Ordering convention: basis index i = sum_q b_q * 2^(n-1-q), so qubit 0 is
/// the most significant bit (leftmost tensor factor). The gate's own index is
/// built the same way from the listed qubits, first listed = most significant.
///
/// Throws std::invalid_argument on duplicate or out-of-range qubits, on a
/// size mismatch between `matrix` and `qubits`, or when n exceeds `limit`.
UnitaryMatrix embed(const GateMatrix& matrix, std::span<const int> qubits, int n,
                    int limit = kDefaultWindowLimit);

}  // namespace gatetrim
