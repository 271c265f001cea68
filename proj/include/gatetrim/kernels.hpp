#pragma once

#include <array>
#include <span>
#include <vector>

#include "gatetrim/gates.hpp"

/// Dense kernels behind the figure of merit: local gate application and the
/// overlap z = tr(T^dagger U) together with dz/dtheta_k for every gate.
///
/// overlap_gradient() is the production kernel (prefix/suffix caching, OpenMP
/// over gates). overlap_gradient_reference() is a serial, deliberately naive
/// implementation built from embed() and full matrix products; it is kept as
/// a test oracle and benchmark baseline.
namespace gatetrim::kernels {

/// A gate prepared for application: matrix and derivative in row-major
/// 4x4 storage (only the leading 2x2 block is used for one-qubit gates).
struct LocalOp {
  int arity = 1;
  std::array<int, 2> qubits{0, 0};
  std::array<Complex, 16> matrix{};
  std::array<Complex, 16> derivative{};
  bool parameterized = false;
};

LocalOp make_op(GateKind kind, std::span<const int> qubits, double theta);

/// m <- embed(op) * m
void apply_left(UnitaryMatrix& m, const std::array<Complex, 16>& g, const LocalOp& op,
                int n_qubits);
/// m <- m * embed(op)
void apply_right(UnitaryMatrix& m, const std::array<Complex, 16>& g, const LocalOp& op,
                 int n_qubits);

struct OverlapGradient {
  Complex overlap;
  /// dz/dtheta per op; zero for ops that are not parameterized.
  std::vector<Complex> derivatives;
};

/// Ops apply in list order; U = e^{i*global_phase} * op_m * ... * op_1.
OverlapGradient overlap_gradient(const UnitaryMatrix& target, std::span<const LocalOp> ops,
                                 int n_qubits, double global_phase);

OverlapGradient overlap_gradient_reference(const UnitaryMatrix& target,
                                           std::span<const LocalOp> ops, int n_qubits,
                                           double global_phase);

/// Product of the ops applied to the identity, times e^{i*global_phase}.
UnitaryMatrix product(std::span<const LocalOp> ops, int n_qubits, double global_phase);

}  // namespace gatetrim::kernels
