#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "warpflow/math_util.hpp"
#include "warpflow/warp_function.hpp"

using namespace warpflow;

namespace {
std::vector<double> radii(std::size_t n) {
  SplitMix64 rng(3);
  std::vector<double> r(n);
  for (auto& x : r) x = 0.5 + 2.0 * rng.next_unit();
  return r;
}
} // namespace

static void BM_fast_exp_array(benchmark::State& state) {
  const auto r = radii(16384);
  std::vector<double> out(r.size());
  for (auto _ : state) {
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = fast_exp(r[i]);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(r.size()));
}
BENCHMARK(BM_fast_exp_array);

static void BM_libm_exp_array(benchmark::State& state) {
  const auto r = radii(16384);
  std::vector<double> out(r.size());
  for (auto _ : state) {
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = std::exp(r[i]);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(r.size()));
}
BENCHMARK(BM_libm_exp_array);

static void BM_warp_eval_many(benchmark::State& state) {
  const WarpFunction w = WarpFunction::linear_combination(1.0, 0.5, 0.0, 4.0);
  const auto r = radii(16384);
  std::vector<double> th(r.size()), th1(r.size());
  for (auto _ : state) {
    w.eval_many(r.data(), r.size(), th.data(), th1.data());
    benchmark::DoNotOptimize(th.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(r.size()));
}
BENCHMARK(BM_warp_eval_many);

static void BM_pencil_eigenvalues(benchmark::State& state) {
  SplitMix64 rng(5);
  std::vector<std::array<double, 6>> cases(4096);
  for (auto& c : cases) {
    const double a = 1.0 + rng.next_unit(), b = 0.4 * rng.next_symmetric(),
                 d = 1.0 + rng.next_unit();
    c = {a, b, d, rng.next_symmetric(), rng.next_symmetric(), rng.next_symmetric()};
  }
  for (auto _ : state) {
    double acc = 0.0;
    for (const auto& c : cases)
      acc += pencil_eigenvalues_2x2(c[0], c[1], c[2], c[3], c[4], c[5]).second;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cases.size()));
}
BENCHMARK(BM_pencil_eigenvalues);

static void BM_adaptive_quadrature(benchmark::State& state) {
  const WarpFunction w = WarpFunction::sinh_warp(0.0, 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adaptive_gauss_legendre(
        [&](double x) {
          const auto j = w.eval(x);
          return j.value * j.value * j.value;
        },
        0.0, 3.5));
  }
}
BENCHMARK(BM_adaptive_quadrature);
