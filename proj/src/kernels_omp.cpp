#include <stdexcept>

#include "gatetrim/kernels.hpp"

namespace gatetrim::kernels {

namespace {

// Below this amount of work per gradient sweep the thread start-up cost
// dominates.
constexpr long kParallelWorkThreshold = 1L << 15;

std::array<Complex, 16> to_storage(const GateMatrix& g) {
  std::array<Complex, 16> out{};
  const auto a = g.rows();
  for (Eigen::Index r = 0; r < a; ++r) {
    for (Eigen::Index c = 0; c < a; ++c) out[r * 4 + c] = g(r, c);
  }
  return out;
}

// Index offsets of the 2^arity basis states touched by `op`, relative to a
// base index whose op bits are all zero. Local index = 2*b(q0) + b(q1).
struct Stencil {
  int size;
  std::array<Eigen::Index, 4> offset;
  Eigen::Index mask;
};

Stencil stencil(const LocalOp& op, int n) {
  Stencil s{};
  const Eigen::Index b0 = Eigen::Index{1} << (n - 1 - op.qubits[0]);
  if (op.arity == 1) {
    s.size = 2;
    s.offset = {0, b0, 0, 0};
    s.mask = b0;
  } else {
    const Eigen::Index b1 = Eigen::Index{1} << (n - 1 - op.qubits[1]);
    s.size = 4;
    s.offset = {0, b1, b0, b0 | b1};
    s.mask = b0 | b1;
  }
  return s;
}

Complex trace_of_product(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  // tr(a * b) = sum_ij a_ij b_ji
  return (a.transpose().array() * b.array()).sum();
}

}  // namespace

LocalOp make_op(GateKind kind, std::span<const int> qubits, double theta) {
  LocalOp op;
  op.arity = arity(kind);
  if (static_cast<int>(qubits.size()) != op.arity) {
    throw std::invalid_argument("qubit count does not match gate arity");
  }
  for (int i = 0; i < op.arity; ++i) op.qubits[i] = qubits[i];
  op.matrix = to_storage(gate_matrix(kind, theta));
  op.parameterized = is_native(kind);
  if (op.parameterized) op.derivative = to_storage(gate_matrix_derivative(kind, theta));
  return op;
}

namespace {

// acc += a * b without the library's inf/nan recovery path.
inline void fma_into(Complex& acc, const Complex& a, const Complex& b) {
  acc = {acc.real() + a.real() * b.real() - a.imag() * b.imag(),
         acc.imag() + a.real() * b.imag() + a.imag() * b.real()};
}

template <int S>
void apply_left_fixed(UnitaryMatrix& m, const std::array<Complex, 16>& g, const Stencil& s) {
  const Eigen::Index dim = m.rows();
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Complex* column = m.col(col).data();
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & s.mask) continue;
      Complex v[S];
      for (int k = 0; k < S; ++k) v[k] = column[base + s.offset[k]];
      for (int r = 0; r < S; ++r) {
        Complex acc = 0;
        for (int k = 0; k < S; ++k) fma_into(acc, g[r * 4 + k], v[k]);
        column[base + s.offset[r]] = acc;
      }
    }
  }
}

template <int S>
void apply_right_fixed(UnitaryMatrix& m, const std::array<Complex, 16>& g, const Stencil& s) {
  const Eigen::Index dim = m.cols();
  const Eigen::Index rows = m.rows();
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & s.mask) continue;
    Complex* cols[S];
    for (int k = 0; k < S; ++k) cols[k] = m.col(base + s.offset[k]).data();
    for (Eigen::Index r = 0; r < rows; ++r) {
      Complex v[S];
      for (int k = 0; k < S; ++k) v[k] = cols[k][r];
      for (int c = 0; c < S; ++c) {
        Complex acc = 0;
        for (int k = 0; k < S; ++k) fma_into(acc, v[k], g[k * 4 + c]);
        cols[c][r] = acc;
      }
    }
  }
}

}  // namespace

void apply_left(UnitaryMatrix& m, const std::array<Complex, 16>& g, const LocalOp& op,
                int n_qubits) {
  const Stencil s = stencil(op, n_qubits);
  if (s.size == 2) {
    apply_left_fixed<2>(m, g, s);
  } else {
    apply_left_fixed<4>(m, g, s);
  }
}

void apply_right(UnitaryMatrix& m, const std::array<Complex, 16>& g, const LocalOp& op,
                 int n_qubits) {
  const Stencil s = stencil(op, n_qubits);
  if (s.size == 2) {
    apply_right_fixed<2>(m, g, s);
  } else {
    apply_right_fixed<4>(m, g, s);
  }
}

UnitaryMatrix product(std::span<const LocalOp> ops, int n_qubits, double global_phase) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  UnitaryMatrix u = UnitaryMatrix::Identity(dim, dim) * std::polar(1.0, global_phase);
  for (const auto& op : ops) apply_left(u, op.matrix, op, n_qubits);
  return u;
}

OverlapGradient overlap_gradient(const UnitaryMatrix& target, std::span<const LocalOp> ops,
                                 int n_qubits, double global_phase) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (target.rows() != dim || target.cols() != dim) {
    throw std::invalid_argument("target dimension does not match register size");
  }
  const auto m = static_cast<long>(ops.size());

  // prefix[k] = op_k ... op_1 * e^{i phase};  suffix[k] = T^dagger op_m ... op_{k+1}
  std::vector<UnitaryMatrix> prefix(m + 1);
  std::vector<UnitaryMatrix> suffix(m + 1);
  prefix[0] = UnitaryMatrix::Identity(dim, dim) * std::polar(1.0, global_phase);
  for (long k = 0; k < m; ++k) {
    prefix[k + 1] = prefix[k];
    apply_left(prefix[k + 1], ops[k].matrix, ops[k], n_qubits);
  }
  suffix[m] = target.adjoint();
  for (long k = m; k > 0; --k) {
    suffix[k - 1] = suffix[k];
    apply_right(suffix[k - 1], ops[k - 1].matrix, ops[k - 1], n_qubits);
  }

  OverlapGradient out;
  out.overlap = trace_of_product(suffix[m], prefix[m]);
  out.derivatives.assign(m, Complex{0.0, 0.0});

  const bool parallel = m * dim * dim >= kParallelWorkThreshold;
#pragma omp parallel if (parallel)
  {
    UnitaryMatrix scratch(dim, dim);
#pragma omp for schedule(static)
    for (long k = 0; k < m; ++k) {
      if (!ops[k].parameterized) continue;
      scratch = prefix[k];
      apply_left(scratch, ops[k].derivative, ops[k], n_qubits);
      out.derivatives[k] = trace_of_product(suffix[k + 1], scratch);
    }
  }
  return out;
}

}  // namespace gatetrim::kernels
