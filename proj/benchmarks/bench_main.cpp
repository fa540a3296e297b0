#include <benchmark/benchmark.h>

#include "sumprod/applications.hpp"
#include "sumprod/energy.hpp"
#include "sumprod/factor.hpp"
#include "sumprod/fibering.hpp"
#include "sumprod/generators.hpp"
#include "sumprod/random.hpp"
#include "sumprod/separation.hpp"
#include "sumprod/setops.hpp"

using namespace sumprod;

namespace {

RunConfig single_thread() {
  RunConfig c;
  c.threads = 1;
  return c;
}

void BM_KFoldProduct(benchmark::State& state) {
  const RationalSet A = random_rational_set(static_cast<std::uint64_t>(state.range(0)), 1000, 50, 1);
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(k_fold_product(A, k, single_thread()));
}
BENCHMARK(BM_KFoldProduct)->Args({50, 2})->Args({200, 2})->Args({30, 3});

void BM_MixedEnergy(benchmark::State& state) {
  const RationalSet A = random_rational_set(static_cast<std::uint64_t>(state.range(0)), 1000, 50, 2);
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(mixed_energy(A, Rational(1), k, single_thread()));
}
BENCHMARK(BM_MixedEnergy)->Args({30, 2})->Args({200, 2})->Args({30, 3})->Args({12, 4});

void BM_MixedEnergyGp(benchmark::State& state) {
  const RationalSet A = multidim_gp({Integer(2), Integer(3)}, {state.range(0), state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(mixed_energy(A, Rational(1), 3, single_thread()));
}
BENCHMARK(BM_MixedEnergyGp)->Arg(3)->Arg(5);

void BM_LambdaAscent(benchmark::State& state) {
  const RationalSet A = random_rational_set(static_cast<std::uint64_t>(state.range(0)), 100, 10, 3);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_ascent(A, Rational(1), 3, 50, 7, single_thread()));
}
BENCHMARK(BM_LambdaAscent)->Arg(8)->Arg(16);

void BM_FactorSemiprime(benchmark::State& state) {
  const Integer n = Integer("1000000007") * Integer("998244353");
  for (auto _ : state) benchmark::DoNotOptimize(factor_integer(n));
}
BENCHMARK(BM_FactorSemiprime);

void BM_FiberGraphSum(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const LatticeSet A = random_lattice_set(3, size, 10, 4), B = random_lattice_set(3, size, 10, 5);
  const EdgeList G = random_lattice_graph(size, size, 0.3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(verify_fiber_graph_sum(A, B, G, 1));
}
BENCHMARK(BM_FiberGraphSum)->Arg(100)->Arg(400);

void BM_Regularize(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  const LatticeSet A = random_lattice_set(2, size, 30, 7), B = random_lattice_set(2, size, 30, 8);
  const EdgeList G = random_lattice_graph(size, size, 0.5, 9);
  for (auto _ : state) benchmark::DoNotOptimize(regularize(A, B, G, 1, {}, single_thread()));
}
BENCHMARK(BM_Regularize)->Arg(50)->Arg(200);

std::vector<Line> random_lines(std::size_t count) {
  Rng rng(10);
  std::vector<Line> lines;
  while (lines.size() < count) {
    Line l{Rational(rng.between(-3, 3)), Rational(rng.between(-3, 3)), Rational(rng.between(-20, 20))};
    if (!l.a.is_zero() || !l.b.is_zero()) lines.push_back(l);
  }
  return lines;
}

void BM_Incidences(benchmark::State& state) {
  const RationalSet A = random_rational_set(200, 100, 1, 11);
  const auto lines = random_lines(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_incidences(A, lines, single_thread()));
}
BENCHMARK(BM_Incidences)->Arg(100)->Arg(1000);

void BM_IncidencesNaive(benchmark::State& state) {
  const RationalSet A = random_rational_set(200, 100, 1, 11);
  const auto lines = random_lines(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_incidences_naive(A, lines));
}
BENCHMARK(BM_IncidencesNaive)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
