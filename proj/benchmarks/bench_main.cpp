#include <benchmark/benchmark.h>

#include <random>

#include "bdq/algebroid.hpp"
#include "bdq/bergman.hpp"
#include "bdq/fedosov.hpp"

using namespace bdq;

namespace {

Poly random_poly(std::mt19937_64& rng, const AlphabetPtr& alpha, int terms, int degree) {
  Poly p(alpha, Scalar(0));
  for (int t = 0; t < terms; ++t) {
    Exponent e{};
    for (int k = 0; k < degree; ++k) e[rng() % alpha->size()] += 1;
    p += Poly::monomial(alpha, e, Scalar::rational(long(rng() % 19) - 9, long(rng() % 5) + 1));
  }
  return p;
}

void BM_PolyMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto alpha = complex_alphabet(1);
  int terms = int(state.range(0));
  Poly a = random_poly(rng, alpha, terms, 6), b = random_poly(rng, alpha, terms, 6);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PolyMultiply)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_RatFuncSigma(benchmark::State& state) {
  auto e = cr::build_frame(cr::ball(int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cr::pullback_sigma(e));
}
BENCHMARK(BM_RatFuncSigma)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_FiberProduct(benchmark::State& state) {
  fq::FedosovSystem sys(pk::para_kahler_data(cr::build_frame(cr::ball(1))));
  auto f = fq::solve_r(sys, fq::mu_symplectic(sys), 5);
  int deg = int(state.range(0));
  for (auto _ : state) {
    sys.product().clear_cache();
    benchmark::DoNotOptimize(sys.product()(f.r, f.r, deg));
  }
}
BENCHMARK(BM_FiberProduct)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);

void BM_SolveR(benchmark::State& state) {
  int n = int(state.range(0)), degree = int(state.range(1));
  for (auto _ : state) {
    fq::FedosovSystem sys(pk::para_kahler_data(cr::build_frame(cr::ball(n))));
    benchmark::DoNotOptimize(fq::solve_r(sys, fq::mu_symplectic(sys), degree));
  }
}
BENCHMARK(BM_SolveR)->Args({0, 5})->Args({0, 7})->Args({1, 4})->Args({1, 5})->Unit(benchmark::kMillisecond);

void BM_BergmanExpansion(benchmark::State& state) {
  int order = int(state.range(0));
  auto s = bt::disc(3 * order + 14);
  Poly z = Poly::var(s.alpha, 0), zb = Poly::var(s.alpha, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bt::bt_expansion(s, z * z, zb * z, order));
}
BENCHMARK(BM_BergmanExpansion)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
