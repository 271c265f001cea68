// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gatetrim/circuit.hpp"
#include "gatetrim/merit.hpp"
#include "gatetrim/metrics.hpp"
#include "gatetrim/passes.hpp"
#include "test_support.hpp"

using namespace gatetrim;
using namespace gatetrim::testing;

namespace {

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  if (!ok) ++failures;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void small_qft_example() {
  std::ifstream in(std::string(GATETRIM_TEST_DATA) + "/qft2.qasm");
  std::ostringstream text;
  text << in.rdbuf();
  const auto t0 = std::chrono::steady_clock::now();
  const Circuit c = rebase(parse(text.str(), Format::Qasm));
  PassConfig cfg;
  cfg.noise.default_error_rate = 0.01;
  const auto [out, rep] = optimize_circuit(c, cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double f = idealized_fidelity(unitary_of(c), unitary_of(out));
  report(1, "small QFT example, five entanglers down to three",
         rep.input_entangling == 5 && rep.output_entangling <= 3 && f >= 0.999 && secs < 5.0,
         fmt("%d -> %d entangling, fidelity %.6f, %.3f s", rep.input_entangling,
             rep.output_entangling, f, secs));
}

void noise_model() {
  bool ok = xi(kPi / 2, XiShape::Quadratic) == 1.0;
  for (XiShape s : {XiShape::Quadratic, XiShape::Linear, XiShape::SinSquared}) {
    ok = ok && xi(0.0, s) == 0.0;
  }
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    Circuit c;
    c.n_qubits = 2;
    for (int i = 0; i < k; ++i) c.gates.push_back({GateKind::RZZ, {0, 1}, kPi / 2, std::nullopt});
    const Ansatz a = ansatz_from_circuit(c);
    worst = std::max(worst, std::abs(fidelity_multiplier(a, a.theta0, NoiseModel{0.01}) -
                                     std::pow(0.99, k)));
  }
  report(2, "noise model anchors and multiplier powers", ok && worst <= 1e-12,
         fmt("xi anchors %s, max multiplier error %.2e", ok ? "exact" : "off", worst));
}

void gradient_suite() {
  std::mt19937_64 rng(2024);
  const double rates[] = {0.0, 0.01, 0.02};
  std::uniform_int_distribution<int> pick(0, 2);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_native_circuit(rng, {.min_qubits = 1, .max_qubits = 4, .max_gates = 20});
    const Circuit t = random_native_circuit(rng, {.min_qubits = c.n_qubits,
                                                  .max_qubits = c.n_qubits});
    const UnitaryMatrix target = unitary_of(t);
    const Ansatz a = ansatz_from_circuit(c);
    const NoiseModel noise{rates[pick(rng)]};
    const auto ev = evaluate(target, a, a.theta0, noise);
    auto merit = [&](const std::vector<double>& x) { return evaluate(target, a, x, noise).merit; };
    for (int p = 0; p < a.n_params; ++p) {
      const double fd = central_difference(merit, a.theta0, p, 1e-7);
      worst = std::max(worst, std::abs(ev.gradient[p] - fd) / std::max(std::abs(fd), 1.0));
    }
  }
  report(3, "analytic gradient against central differences", worst < 1e-5,
         fmt("max relative error %.2e over 20 instances", worst));
}

void zero_noise_exactness() {
  std::mt19937_64 rng(4242);
  PassConfig cfg;
  cfg.noise.default_error_rate = 0.0;
  cfg.fidelity_floor = 1 - 1e-9;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_native_circuit(rng, {.min_qubits = 1, .max_qubits = 4, .max_gates = 20});
    const auto [out, rep] = optimize_circuit(c, cfg);
    worst = std::max(worst, max_abs_diff(unitary_of(out), unitary_of(c)));
  }
  report(4, "zero noise leaves the unitary unchanged", worst <= 1e-8,
         fmt("max entry deviation %.2e over 50 circuits", worst));
}

void merge_property() {
  bool ok = true;
  double worst = 0.0;
  for (int pair = 0; pair < 3; ++pair) {
    Circuit c;
    c.n_qubits = 3;
    const int a = pair, b = (pair + 1) % 3;
    c.gates = {{GateKind::RZZ, {a, b}, kPi / 4, std::nullopt},
               {GateKind::RZZ, {a, b}, kPi / 4, std::nullopt}};
    PassConfig cfg;
    cfg.noise.default_error_rate = 0.01;
    const auto [out, rep] = optimize_circuit(c, cfg);
    ok = ok && out.gates.size() == 1 && out.gates[0].kind == GateKind::RZZ;
    if (!out.gates.empty()) worst = std::max(worst, std::abs(out.gates[0].angle - kPi / 2));
  }
  report(5, "adjacent same-pair rotations merge", ok && worst <= 1e-6,
         fmt("single gate %s, max angle error %.2e", ok ? "yes" : "no", worst));
}

void table_arithmetic() {
  struct Row {
    const char* name;
    double f;
    int n;
    long expected;
  };
  const Row rows[] = {{"ghz", 1.0, 3, 97}, {"qwalk", 0.996, 30, 74}, {"grover", 0.968, 24, 76}};
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    const long pct = std::lround(100 * estimated_fidelity(r.f, r.n, 0.99));
    ok = ok && pct == r.expected;
    detail += fmt("%s %ld%% ", r.name, pct);
  }
  detail.pop_back();
  report(6, "estimated fidelity table values", ok, detail);
}

void echo_gate_properties() {
  const double r = 1 / std::sqrt(2.0);
  const Complex a(0, r);
  Eigen::MatrixXcd ecr(4, 4);
  ecr << 0, 0, a, -r, 0, 0, -r, a, a, r, 0, 0, r, a, 0, 0;
  const bool ecr_ok = max_abs_diff(gate_matrix(GateKind::FECR, kPi / 2), ecr) < 1e-15;

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto m = gate_matrix(GateKind::FECR, angle(rng));
    worst = std::max(worst, max_abs_diff(m * m, -Eigen::MatrixXcd::Identity(4, 4)));
  }

  Circuit c;
  c.n_qubits = 2;
  c.gates = {{GateKind::FECR, {0, 1}, kPi / 4, std::nullopt},
             {GateKind::Z, {0}, 0.0, std::nullopt},
             {GateKind::Z, {1}, 0.0, std::nullopt},
             {GateKind::FECR, {0, 1}, kPi / 4, std::nullopt}};
  const UnitaryMatrix u = unitary_of(c);
  std::array<Eigen::MatrixXcd, 4> p;
  for (auto& m : p) m = Eigen::MatrixXcd::Zero(2, 2);
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, Complex(0, -1), Complex(0, 1), 0;
  p[3] << 1, 0, 0, -1;
  auto kron = [](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd k(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k.block(2 * i, 2 * j, 2, 2) = x(i, j) * y;
    return k;
  };
  int images = 0;
  for (const auto& x : p) {
    for (const auto& y : p) {
      const Eigen::MatrixXcd image = u * kron(x, y) * u.adjoint();
      bool found = false;
      for (const auto& s : p)
        for (const auto& t : p)
          for (Complex ph : {Complex(1), Complex(-1), Complex(0, 1), Complex(0, -1)})
            found = found || max_abs_diff(image, ph * kron(s, t)) < 1e-10;
      images += found;
    }
  }
  report(7, "echo gate identities and Clifford construction",
         ecr_ok && worst <= 1e-12 && images == 16,
         fmt("ECR match %s, max |M^2 + I| %.2e, %d/16 Paulis map to Paulis",
             ecr_ok ? "yes" : "no", worst, images));
}

void never_worse() {
  std::mt19937_64 rng(8080);
  PassConfig cfg;
  int grew = 0, regressed = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const Circuit c = random_native_circuit(rng, {.min_qubits = 2, .max_qubits = 6, .max_gates = 40});
    const auto [first, r1] = optimize_circuit(c, cfg);
    const auto [second, r2] = optimize_circuit(first, cfg);
    grew += r1.output_entangling > r1.input_entangling;
    regressed += r2.output_entangling > r1.output_entangling;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(8, "entangling count never increases", grew == 0 && regressed == 0,
         fmt("%d grew on first run, %d grew on second run, 200 circuits, %.1f s", grew,
             regressed, secs));
}

}  // namespace

int main() {
  small_qft_example();
  noise_model();
  gradient_suite();
  zero_noise_exactness();
  merge_property();
  table_arithmetic();
  echo_gate_properties();
  never_worse();
  std::printf("[N/A ] criterion 9: full benchmark-suite reproduction needs external circuit "
              "files and third-party optimizers; covered by criteria 1, 4, 5 and 8\n");
  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
