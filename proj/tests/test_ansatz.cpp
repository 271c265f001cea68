#include <gtest/gtest.h>

#include <random>

#include "gatetrim/ansatz.hpp"
#include "gatetrim/optimizer.hpp"
#include "test_support.hpp"

using namespace gatetrim;
using gatetrim::testing::qft2_circuit;
using gatetrim::testing::kPi;
using gatetrim::testing::max_abs_diff;
using gatetrim::testing::random_native_circuit;

TEST(Ansatz, OneParameterPerGateInOrder) {
  Circuit c;
  c.n_qubits = 2;
  c.gates = {{GateKind::RX, {0}, 0.1, std::nullopt},
             {GateKind::RZZ, {0, 1}, 0.2, 0.02},
             {GateKind::RY, {1}, 0.3, std::nullopt}};
  const Ansatz a = ansatz_from_circuit(c);
  EXPECT_EQ(a.n_params, 3);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(a.structure[i].parameter, i);
  EXPECT_EQ(a.theta0, (std::vector<double>{0.1, 0.2, 0.3}));
  EXPECT_EQ(a.structure[1].error_rate, 0.02);
}

TEST(Ansatz, EmptyCircuit) {
  Circuit c;
  c.n_qubits = 3;
  const Ansatz a = ansatz_from_circuit(c);
  EXPECT_EQ(a.n_params, 0);
  EXPECT_TRUE(a.theta0.empty());
}

TEST(Ansatz, QftAnglesBecomeTheStartingPoint) {
  const Circuit c = qft2_circuit();
  const Ansatz a = ansatz_from_circuit(c);
  EXPECT_EQ(a.n_params, 23);
  EXPECT_DOUBLE_EQ(a.theta0[0], kPi / 2);
  EXPECT_DOUBLE_EQ(a.theta0[2], kPi);
  EXPECT_DOUBLE_EQ(a.theta0[4], kPi / 2);
  EXPECT_DOUBLE_EQ(a.theta0[5], -kPi / 4);
  EXPECT_DOUBLE_EQ(a.theta0[6], -kPi / 2);
  for (std::size_t i = 0; i < c.gates.size(); ++i) EXPECT_EQ(a.theta0[i], c.gates[i].angle);
}

TEST(Ansatz, RejectsNonNativeGates) {
  Circuit c;
  c.n_qubits = 2;
  c.gates = {{GateKind::CX, {0, 1}, 0.0, std::nullopt}};
  try {
    ansatz_from_circuit(c);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cx"), std::string::npos);
  }
}

TEST(Bind, StartingPointRestoresTheCircuit) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_native_circuit(rng);
    const Ansatz a = ansatz_from_circuit(c);
    const Circuit b = gatetrim::bind(a, a.theta0);
    EXPECT_EQ(b, c);
    EXPECT_LT(max_abs_diff(unitary_of(b), unitary_of(c)), 1e-12);
  }
}

TEST(Bind, ZeroedRzzIsIdentity) {
  Circuit c;
  c.n_qubits = 2;
  c.gates = {{GateKind::RZZ, {0, 1}, kPi / 2, std::nullopt}};
  const Ansatz a = ansatz_from_circuit(c);
  const std::vector<double> zero{0.0};
  EXPECT_EQ(unitary_of(gatetrim::bind(a, zero)), UnitaryMatrix::Identity(4, 4));
}

TEST(Bind, RejectsBadParameterVectors) {
  const Ansatz a = ansatz_from_circuit(qft2_circuit());
  std::vector<double> short_theta(22, 0.0);
  EXPECT_THROW(gatetrim::bind(a, short_theta), std::invalid_argument);
  std::vector<double> theta = a.theta0;
  theta[3] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(gatetrim::bind(a, theta), std::invalid_argument);
}

TEST(DefaultBounds, EntanglersAndFrozenParameters) {
  Ansatz a = ansatz_from_circuit(qft2_circuit());
  a.frozen.assign(a.n_params, false);
  a.frozen[0] = true;
  const auto b = default_bounds(a);
  ASSERT_EQ(b.size(), 23u);
  EXPECT_EQ(b[0].lo, a.theta0[0]);
  EXPECT_EQ(b[0].hi, a.theta0[0]);
  EXPECT_EQ(b[4].lo, -kPi);
  EXPECT_EQ(b[4].hi, kPi);
  EXPECT_EQ(b[1].lo, -2 * kPi);
}
