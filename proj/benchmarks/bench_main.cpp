#include <benchmark/benchmark.h>

#include "gradweil/catalog.hpp"
#include "gradweil/chernweil.hpp"
#include "gradweil/connections.hpp"
#include "gradweil/random.hpp"

using namespace gradweil;

namespace {

GradedBundle two_term(int r0, int r1) { return GradedBundle({{0, r0}, {1, r1}}); }

void BM_CuthCurvature(benchmark::State& state) {
  RandomSource rnd(1);
  const int n = static_cast<int>(state.range(0));
  const auto c = rnd.cuth(catalog::abelian(n), two_term(2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(cuth_curvature(c));
}
BENCHMARK(BM_CuthCurvature)->DenseRange(2, 6, 2);

void BM_CurvaturePower(benchmark::State& state) {
  RandomSource rnd(2);
  const auto c = rnd.cuth(catalog::sl2(), two_term(2, 1));
  const int i = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(curvature_power(c, i));
}
BENCHMARK(BM_CurvaturePower)->DenseRange(1, 3);

void BM_Wedge(benchmark::State& state) {
  RandomSource rnd(3);
  const int n = static_cast<int>(state.range(0));
  const ScalarForm a = rnd.scalar_form({}, n, 2, 0, 1.0), b = rnd.scalar_form({}, n, 2, 0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(wedge(a, b));
}
BENCHMARK(BM_Wedge)->DenseRange(4, 10, 2);

void BM_Cohomology(benchmark::State& state) {
  const auto a = state.range(0) ? catalog::five_dim() : catalog::h3();
  for (auto _ : state) benchmark::DoNotOptimize(ce_cohomology(*a).dims());
}
BENCHMARK(BM_Cohomology)->Arg(0)->Arg(1);

void BM_IsExactPolynomial(benchmark::State& state) {
  RandomSource rnd(4);
  const auto a = catalog::aff1();
  const ScalarForm w = d_A(*a, rnd.scalar_form(a->chart(), 2, 1, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(is_exact(*a, w, 2 * static_cast<int>(state.range(0)) + 2));
}
BENCHMARK(BM_IsExactPolynomial)->DenseRange(1, 3);

void BM_Transgression(benchmark::State& state) {
  RandomSource rnd(5);
  const auto a = catalog::h3();
  const auto c0 = rnd.cuth(a, two_term(2, 1)), c1 = rnd.cuth(a, two_term(2, 1));
  for (auto _ : state) benchmark::DoNotOptimize(transgression(c0, c1, 1));
}
BENCHMARK(BM_Transgression);

}  // namespace
BENCHMARK_MAIN();
