#include <stdexcept>

#include "gatetrim/kernels.hpp"

namespace gatetrim::kernels {

namespace {

GateMatrix to_matrix(const std::array<Complex, 16>& g, int arity) {
  const int a = 1 << arity;
  GateMatrix m(a, a);
  for (int r = 0; r < a; ++r) {
    for (int c = 0; c < a; ++c) m(r, c) = g[r * 4 + c];
  }
  return m;
}

UnitaryMatrix embedded(const std::array<Complex, 16>& g, const LocalOp& op, int n) {
  return embed(to_matrix(g, op.arity),
               std::span<const int>(op.qubits.data(), static_cast<std::size_t>(op.arity)),
               n);
}

}  // namespace

OverlapGradient overlap_gradient_reference(const UnitaryMatrix& target,
                                           std::span<const LocalOp> ops, int n_qubits,
                                           double global_phase) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (target.rows() != dim || target.cols() != dim) {
    throw std::invalid_argument("target dimension does not match register size");
  }
  const UnitaryMatrix start = UnitaryMatrix::Identity(dim, dim) * std::polar(1.0, global_phase);

  UnitaryMatrix u = start;
  for (const auto& op : ops) u = embedded(op.matrix, op, n_qubits) * u;

  OverlapGradient out;
  out.overlap = (target.adjoint() * u).trace();
  out.derivatives.assign(ops.size(), Complex{0.0, 0.0});
  // dU/dtheta_k: the same product with gate k replaced by its derivative.
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (!ops[k].parameterized) continue;
    UnitaryMatrix du = start;
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const auto& g = j == k ? ops[j].derivative : ops[j].matrix;
      du = embedded(g, ops[j], n_qubits) * du;
    }
    out.derivatives[k] = (target.adjoint() * du).trace();
  }
  return out;
}

}  // namespace gatetrim::kernels
