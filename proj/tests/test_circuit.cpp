#include <gtest/gtest.h>

#include <array>
#include <random>

#include "gatetrim/circuit.hpp"
#include "gatetrim/errors.hpp"
#include "test_support.hpp"

using namespace gatetrim;
using gatetrim::testing::qft2_circuit;
using gatetrim::testing::kPi;
using gatetrim::testing::max_abs_diff;
using gatetrim::testing::overlap_fidelity;
using gatetrim::testing::random_native_circuit;

namespace {

Circuit single(int n, GateKind kind, std::vector<int> qubits, double angle = 0.0) {
  Circuit c;
  c.n_qubits = n;
  c.gates.push_back({kind, std::move(qubits), angle, std::nullopt});
  return c;
}

std::array<Eigen::MatrixXcd, 4> paulis() {
  Eigen::MatrixXcd i = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  return {i, x, y, z};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) k.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return k;
}

/// True when u P u^dagger is a two-qubit Pauli times a unit phase from {1, -1, i, -i}.
bool maps_to_pauli(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& p) {
  const Eigen::MatrixXcd image = u * p * u.adjoint();
  const auto basis = paulis();
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      const Eigen::MatrixXcd q = kron(a, b);
      for (Complex phase : {Complex(1), Complex(-1), Complex(0, 1), Complex(0, -1)}) {
        if (max_abs_diff(image, phase * q) < 1e-10) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST(UnitaryOf, EmptyCircuitIsIdentity) {
  Circuit c;
  c.n_qubits = 2;
  EXPECT_EQ(unitary_of(c), UnitaryMatrix::Identity(4, 4));
}

TEST(UnitaryOf, SingleRzz) {
  const auto u = unitary_of(single(2, GateKind::RZZ, {0, 1}, kPi / 2));
  EXPECT_LT(max_abs_diff(u, gate_matrix(GateKind::RZZ, kPi / 2)), 1e-15);
}

TEST(UnitaryOf, GatesApplyInListOrder) {
  Circuit c = single(1, GateKind::RX, {0}, 0.3);
  c.gates.push_back({GateKind::RZ, {0}, 0.9, std::nullopt});
  c.global_phase = 0.4;
  const UnitaryMatrix expected =
      std::exp(Complex(0, 0.4)) * gate_matrix(GateKind::RZ, 0.9) * gate_matrix(GateKind::RX, 0.3);
  EXPECT_LT(max_abs_diff(unitary_of(c), expected), 1e-15);
}

TEST(UnitaryOf, RejectsWideCircuits) {
  Circuit c;
  c.n_qubits = 6;
  EXPECT_THROW(unitary_of(c), WindowLimitError);
  EXPECT_NO_THROW(unitary_of(c, 6));
}

TEST(UnitaryOf, CliffordConstructionFromEchoGates) {
  Circuit c = single(2, GateKind::FECR, {0, 1}, kPi / 4);
  c.gates.push_back({GateKind::Z, {0}, 0.0, std::nullopt});
  c.gates.push_back({GateKind::Z, {1}, 0.0, std::nullopt});
  c.gates.push_back({GateKind::FECR, {0, 1}, kPi / 4, std::nullopt});
  const auto u = unitary_of(c);
  const auto basis = paulis();
  int images = 0;
  for (const auto& a : basis)
    for (const auto& b : basis) images += maps_to_pauli(u, kron(a, b));
  EXPECT_EQ(images, 16);
  // A generic angle is not Clifford, so the check has teeth.
  Circuit off = c;
  off.gates[0].angle = off.gates[3].angle = 0.3;
  EXPECT_FALSE(maps_to_pauli(unitary_of(off), kron(basis[1], basis[0])) &&
               maps_to_pauli(unitary_of(off), kron(basis[0], basis[1])));
}

TEST(Validate, RejectsMalformedCircuits) {
  EXPECT_THROW(validate(single(2, GateKind::RZZ, {0, 0})), std::invalid_argument);
  EXPECT_THROW(validate(single(2, GateKind::RX, {2})), std::invalid_argument);
  EXPECT_THROW(validate(single(2, GateKind::RX, {0, 1})), std::invalid_argument);
  Circuit nan = single(1, GateKind::RX, {0}, std::nan(""));
  EXPECT_THROW(validate(nan), std::invalid_argument);
}

namespace {

void expect_rebase_exact(const Circuit& c, Entangler target = Entangler::Keep) {
  const Circuit r = rebase(c, target);
  EXPECT_TRUE(is_native_circuit(r));
  EXPECT_LT(max_abs_diff(unitary_of(r), unitary_of(c)), 1e-10);
}

}  // namespace

TEST(Rebase, FixedSingleQubitGatesIncludingPhase) {
  for (GateKind k : {GateKind::H, GateKind::X, GateKind::Z, GateKind::S, GateKind::SDG,
                     GateKind::T, GateKind::TDG}) {
    SCOPED_TRACE(std::string(gate_name(k)));
    expect_rebase_exact(single(1, k, {0}));
    expect_rebase_exact(single(3, k, {2}));
  }
}

TEST(Rebase, CxBecomesOneRzz) {
  for (auto q : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
    const Circuit c = single(2, GateKind::CX, q);
    const Circuit r = rebase(c);
    int rzz = 0;
    for (const auto& g : r.gates) {
      if (g.kind == GateKind::RZZ) {
        ++rzz;
        EXPECT_NEAR(g.angle, kPi / 2, 1e-15);
      } else {
        EXPECT_EQ(g.qubits.size(), 1u);
      }
    }
    EXPECT_EQ(rzz, 1);
    EXPECT_LT(max_abs_diff(unitary_of(r), unitary_of(c)), 1e-10);
  }
}

TEST(Rebase, EntanglerConversions) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    const double t = angle(rng);
    expect_rebase_exact(single(2, GateKind::RZZ, {0, 1}, t), Entangler::Fecr);
    expect_rebase_exact(single(2, GateKind::FECR, {1, 0}, t), Entangler::Rzz);
    expect_rebase_exact(single(3, GateKind::FECR, {2, 0}, t), Entangler::Rzz);
  }
  expect_rebase_exact(single(2, GateKind::ECR, {0, 1}));
  expect_rebase_exact(single(2, GateKind::ECR, {1, 0}), Entangler::Rzz);
  expect_rebase_exact(single(2, GateKind::CX, {1, 0}), Entangler::Fecr);
}

TEST(Rebase, TargetFormIsHonoured) {
  Circuit c = single(2, GateKind::RZZ, {0, 1}, 0.4);
  c.gates.push_back({GateKind::FECR, {0, 1}, 0.2, std::nullopt});
  for (const auto& g : rebase(c, Entangler::Rzz).gates) EXPECT_NE(g.kind, GateKind::FECR);
  for (const auto& g : rebase(c, Entangler::Fecr).gates) EXPECT_NE(g.kind, GateKind::RZZ);
}

TEST(Rebase, CarriesErrorRateToTheEntangler) {
  Circuit c = single(2, GateKind::CX, {0, 1});
  c.gates[0].error_rate = 0.03;
  for (const auto& g : rebase(c).gates) {
    if (g.kind == GateKind::RZZ) {
      EXPECT_EQ(g.error_rate, 0.03);
    } else {
      EXPECT_FALSE(g.error_rate.has_value());
    }
  }
}

TEST(Rebase, NativeCircuitIsUnchanged) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_native_circuit(rng);
    EXPECT_EQ(rebase(c), c);
  }
  EXPECT_EQ(rebase(qft2_circuit()), qft2_circuit());
}

TEST(Rebase, RandomMixedCircuitsKeepTheirUnitary) {
  std::mt19937_64 rng(33);
  const GateKind fixed1[] = {GateKind::H, GateKind::X, GateKind::Z, GateKind::S,
                             GateKind::SDG, GateKind::T, GateKind::TDG};
  for (int trial = 0; trial < 100; ++trial) {
    Circuit c = random_native_circuit(rng, {.min_qubits = 2, .max_qubits = 3, .max_gates = 12});
    std::uniform_int_distribution<int> pick(0, 6);
    std::uniform_int_distribution<int> q(0, c.n_qubits - 1);
    for (int k = 0; k < 4; ++k) {
      c.gates.push_back({fixed1[pick(rng)], {q(rng)}, 0.0, std::nullopt});
      int a = q(rng), b = q(rng);
      while (b == a) b = q(rng);
      c.gates.push_back({k % 2 ? GateKind::CX : GateKind::ECR, {a, b}, 0.0, std::nullopt});
    }
    for (Entangler e : {Entangler::Keep, Entangler::Rzz, Entangler::Fecr}) {
      const Circuit r = rebase(c, e);
      EXPECT_TRUE(is_native_circuit(r));
      EXPECT_NEAR(overlap_fidelity(unitary_of(r), unitary_of(c)), 1.0, 1e-10);
      EXPECT_LT(max_abs_diff(unitary_of(r), unitary_of(c)), 1e-9);
    }
  }
}
