#include <benchmark/benchmark.h>

#include "twistcalc/engine.hpp"
#include "twistcalc/lattice.hpp"

#include <random>

using namespace twistcalc;

static IntMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-50, 50);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Int(dist(rng));
  return m;
}

static void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  IntMatrix m = random_matrix(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_LayerMatrices(benchmark::State& state) {
  const auto r = RingDescriptor::quadratic(-1);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<RingElem> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(i % 2 ? RingElem::omega(r) : RingElem::one(r));
  Automorphism phi = NormalFormAuto::monomial(d, 1, RingAutomorphism::Conjugation);
  for (auto _ : state) benchmark::DoNotOptimize(layer_matrices(phi));
}
BENCHMARK(BM_LayerMatrices)->Arg(4)->Arg(9);

static void BM_Sweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(r_infinity_sweep(RingDescriptor::quadratic(-1), n).all_infinite());
}
BENCHMARK(BM_Sweep)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
