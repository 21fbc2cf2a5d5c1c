#include <benchmark/benchmark.h>

#include <cmath>

#include "circlemap/cf.hpp"
#include "circlemap/circle_map.hpp"
#include "circlemap/measures.hpp"
#include "circlemap/partitions.hpp"
#include "circlemap/renorm.hpp"
#include "circlemap/rotation.hpp"
#include "circlemap/tongues.hpp"
#include "circlemap/triples.hpp"

using namespace circlemap;

namespace {

const CircleMapLift& critical_golden() {
  static const CircleMapLift m =
      CircleMapLift::arnold(tongue_point(ContinuedFraction::golden(), 1.0, 1e-13), 1.0);
  return m;
}

void BM_Iterate(benchmark::State& state) {
  const auto f = CircleMapLift::arnold(0.3, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(iterate_lift(f, 0.1, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Iterate)->Arg(1000)->Arg(100000);

void BM_RotBracket(benchmark::State& state) {
  const auto f = CircleMapLift::arnold(0.42, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(rot_bracket(f, state.range(0)));
}
BENCHMARK(BM_RotBracket)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_TonguePoint(benchmark::State& state) {
  const auto g = ContinuedFraction::golden();
  for (auto _ : state) benchmark::DoNotOptimize(tongue_point(g, 1.0, 1e-10));
}
BENCHMARK(BM_TonguePoint)->Unit(benchmark::kMillisecond);

void BM_RationalBoundary(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rational_boundary(2, 5, 0.8));
}
BENCHMARK(BM_RationalBoundary)->Unit(benchmark::kMillisecond);

void BM_Brjuno(benchmark::State& state) {
  const auto g = ContinuedFraction::golden();
  for (auto _ : state) benchmark::DoNotOptimize(brjuno(g, 40).value);
}
BENCHMARK(BM_Brjuno);

void BM_DensityDiffeo(benchmark::State& state) {
  const auto f = CircleMapLift::arnold(tongue_point(ContinuedFraction::golden(), 0.5, 1e-12), 0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(minus_one_density(f, int(state.range(0)), 8192, 1e-8).residual);
}
BENCHMARK(BM_DensityDiffeo)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_Partition(benchmark::State& state) {
  const auto& f = critical_golden();
  for (auto _ : state) benchmark::DoNotOptimize(build_partition(f, int(state.range(0))).M_n);
}
BENCHMARK(BM_Partition)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ExpansionBound(benchmark::State& state) {
  const auto& f = critical_golden();
  for (auto _ : state) benchmark::DoNotOptimize(expansion_lower_bound(f, 8).ratio);
}
BENCHMARK(BM_ExpansionBound)->Unit(benchmark::kMillisecond);

void BM_LiftCritical(benchmark::State& state) {
  const auto& f = critical_golden();
  for (auto _ : state) benchmark::DoNotOptimize(lift_critical(f).pi_scale);
}
BENCHMARK(BM_LiftCritical)->Unit(benchmark::kMicrosecond);

void BM_LiftFamily(benchmark::State& state) {
  const double b = 1 - 2 * 3.14159265358979323846 * 0.02;
  const auto f = CircleMapLift::arnold(tongue_point(ContinuedFraction::golden(), b, 1e-12), b);
  for (auto _ : state) benchmark::DoNotOptimize(lift_family(f).a);
}
BENCHMARK(BM_LiftFamily)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
