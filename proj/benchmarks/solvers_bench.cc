#include <benchmark/benchmark.h>

#include "refgame/dist/simplex.h"
#include "refgame/dist/values.h"
#include "refgame/linops/eigen.h"
#include "refgame/linops/states.h"
#include "refgame/quantum/fiber_game.h"
#include "refgame/quantum/game.h"
#include "refgame/quantum/value2.h"
#include "refgame/quantum/value3.h"

using namespace refgame;

static void BM_HermitianEigen(benchmark::State& state) {
  linops::Rng rng(1);
  const auto h = linops::random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(linops::hermitian_eigen(h));
}
BENCHMARK(BM_HermitianEigen)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_TopEigpair(benchmark::State& state) {
  linops::Rng rng(2);
  const auto h = linops::random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(linops::top_eigpair(h));
}
BENCHMARK(BM_TopEigpair)->Arg(4)->Arg(16);

static void BM_Value2(benchmark::State& state) {
  const quantum::QuantumGame g(linops::random_observable(4, 3), quantum::two_turn_layout(1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(quantum::value2(g, 1e-4));
}
BENCHMARK(BM_Value2)->Unit(benchmark::kMillisecond);

static void BM_FiberSolve(benchmark::State& state) {
  const auto order = state.range(0) == 0 ? quantum::FiberOrder::kMaxThenMin : quantum::FiberOrder::kMinThenMax;
  const quantum::QuantumGame g(linops::random_observable(8, 4), quantum::three_turn_layout(1, 1, 1));
  const quantum::FiberGame fg(g);
  const auto rho1 = linops::random_density(2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(fg.solve(rho1.mat(), order, 1e-4));
}
BENCHMARK(BM_FiberSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_Value3(benchmark::State& state) {
  const quantum::QuantumGame g(linops::random_observable(8, 6), quantum::three_turn_layout(1, 1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(quantum::value3(g, 1e-4));
}
BENCHMARK(BM_Value3)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_MatrixGame(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  linops::Rng rng(7);
  std::vector<double> payoff(n * n);
  for (auto& p : payoff) p = rng.uniform();
  for (auto _ : state) benchmark::DoNotOptimize(dist::solve_matrix_game(n, n, payoff));
}
BENCHMARK(BM_MatrixGame)->Arg(4)->Arg(16)->Arg(64);

static void BM_ValueK3(benchmark::State& state) {
  const auto g = dist::random_dist_game(static_cast<int>(state.range(0)), 3, 8);
  for (auto _ : state) benchmark::DoNotOptimize(dist::value_k3(g));
}
BENCHMARK(BM_ValueK3)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
