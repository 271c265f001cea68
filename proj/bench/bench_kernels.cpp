#include <benchmark/benchmark.h>
#include <omp.h>

#include <numbers>
#include <random>
#include <vector>

#include "gatetrim/kernels.hpp"

using namespace gatetrim;

namespace {

struct Case {
  UnitaryMatrix target;
  std::vector<kernels::LocalOp> ops;
};

Case make_case(int n, int m) {
  std::mt19937_64 rng(static_cast<unsigned>(n * 1000 + m));
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  Case c;
  for (int i = 0; i < m; ++i) {
    if (i % 3 == 0 && n > 1) {
      int a = qubit(rng), b = qubit(rng);
      while (b == a) b = qubit(rng);
      const std::vector<int> q{a, b};
      c.ops.push_back(kernels::make_op(GateKind::RZZ, q, angle(rng)));
    } else {
      const std::vector<int> q{qubit(rng)};
      c.ops.push_back(kernels::make_op(i % 2 ? GateKind::RX : GateKind::RY, q, angle(rng)));
    }
  }
  c.target = kernels::product(c.ops, n, 0.0);
  return c;
}

void BM_Sweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const Case c = make_case(n, m);
  omp_set_num_threads(static_cast<int>(state.range(2)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::overlap_gradient(c.target, c.ops, n, 0.0));
  }
  state.counters["threads"] = static_cast<double>(state.range(2));
}

void BM_Reference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const Case c = make_case(n, m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::overlap_gradient_reference(c.target, c.ops, n, 0.0));
  }
}

}  // namespace

BENCHMARK(BM_Sweep)
    ->ArgsProduct({{2, 4, 5}, {20, 60}, {1, 2, 4}})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Reference)->ArgsProduct({{2, 4, 5}, {20, 60}})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
