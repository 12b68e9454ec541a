#include <benchmark/benchmark.h>

#include <random>

#include "carnot/assignment.hpp"

namespace {

using namespace carnot;

CostMatrix random_costs(std::size_t n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostMatrix c(n, n);
  for (double& v : c.data) v = u(rng);
  return c;
}

void BM_Assignment(benchmark::State& state) {
  const CostMatrix c = random_costs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_assignment(c).cost);
}
BENCHMARK(BM_Assignment)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_Transportation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CostMatrix c = random_costs(n);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> a(n), b(n);
  double sa = 0, sb = 0;
  for (std::size_t i = 0; i < n; ++i) sa += a[i] = u(rng), sb += b[i] = u(rng);
  for (std::size_t i = 0; i < n; ++i) a[i] /= sa, b[i] /= sb;
  for (auto _ : state) benchmark::DoNotOptimize(solve_transportation(c, a, b).cost);
}
BENCHMARK(BM_Transportation)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

}  // namespace
