#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "carnot/distance.hpp"
#include "carnot/distortion.hpp"
#include "carnot/expmap.hpp"

namespace {

using namespace carnot;

GroupSpec bench_spec(int which) {
  switch (which) {
    case 0: return make_spec(0, {4.0});
    case 1: return make_spec(0, {1.0, 2.0});
    default: return make_spec(2, {1.0, 2.0, 3.0, 4.0});
  }
}

std::vector<Point> points(const GroupSpec& spec, std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> xs;
  for (std::size_t i = 0; i < n; ++i) {
    Point x(spec.dim());
    for (double& v : x) v = u(rng);
    xs.push_back(x);
  }
  return xs;
}

std::vector<Covector> covectors(const GroupSpec& spec, std::size_t n) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Covector> ps;
  for (std::size_t i = 0; i < n; ++i) {
    Covector p(spec.dim());
    for (double& v : p) v = u(rng);
    p.z() = 0.9 * u(rng) * spec.pz_bound();
    ps.push_back(p);
  }
  return ps;
}

void BM_Exp(benchmark::State& state) {
  const GroupSpec spec = bench_spec(static_cast<int>(state.range(0)));
  const auto ps = covectors(spec, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(exp_from_identity(spec, ps[i++ & 1023], 1.0));
}
BENCHMARK(BM_Exp)->DenseRange(0, 2);

void BM_Log(benchmark::State& state) {
  const GroupSpec spec = bench_spec(static_cast<int>(state.range(0)));
  const auto xs = points(spec, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(log_from_identity(spec, xs[i++ & 1023]));
}
BENCHMARK(BM_Log)->DenseRange(0, 2);

void BM_Tau(benchmark::State& state) {
  const GroupSpec spec = bench_spec(static_cast<int>(state.range(0)));
  const auto ps = covectors(spec, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tau(spec, 0.5, ps[i++ & 1023]));
}
BENCHMARK(BM_Tau)->DenseRange(0, 2);

}  // namespace
