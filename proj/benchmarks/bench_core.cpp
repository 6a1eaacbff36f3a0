#include <benchmark/benchmark.h>

#include <algorithm>
#include <bit>

#include "spitzer/spitzer.hpp"

namespace {

using namespace spitzer;

const IncrementDistribution& poisson_case() {
  static const IncrementDistribution d = poisson(1.2, 2);
  return d;
}

void BM_SpitzerSeries(benchmark::State& state) {
  const auto& d = poisson_case();
  const int n = static_cast<int>(state.range(0));
  const int m = n * d.upward_reach();
  for (auto _ : state) benchmark::DoNotOptimize(spitzer_series(d, n, m));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SpitzerSeries)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_LindleyDp(benchmark::State& state) {
  const auto& d = poisson_case();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lindley_dp(d, n, n * d.upward_reach()));
}
BENCHMARK(BM_LindleyDp)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMicrosecond);

void BM_FindKernelRoots(benchmark::State& state) {
  const auto d = geometric(1.0 / static_cast<double>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(find_kernel_roots(d, state.range(1) ? complex(0.4, 0.3) : complex(0.5)));
  state.counters["degree"] = d.max_jump();
}
BENCHMARK(BM_FindKernelRoots)->ArgsProduct({{2, 4, 8}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_ProductEval(benchmark::State& state) {
  const auto& d = poisson_case();
  const auto roots = find_kernel_roots(d, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(product_eval(d, 0.5, complex(0.3, 0.4), roots));
}
BENCHMARK(BM_ProductEval);

void BM_PollaczekEval(benchmark::State& state) {
  const auto& d = poisson_case();
  const auto cert = choose_outer_radius(d, 0.9);
  const double u = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(pollaczek_eval(d, u, complex(0.3, 0.4), cert));
}
BENCHMARK(BM_PollaczekEval)->Arg(10)->Arg(50)->Arg(81)->Unit(benchmark::kMicrosecond);

void BM_InvertBivariateProduct(benchmark::State& state) {
  const auto d = binomial(3, 0.4, 2);
  const int n = static_cast<int>(state.range(0));
  TransformRowSampler sampler = [&](complex u, std::span<const complex> z, std::span<complex> out) {
    const auto roots = find_kernel_roots(d, u);
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = product_eval(d, u, z[j], roots);
  };
  InversionOptions opts;
  opts.z_nodes = static_cast<int>(std::bit_ceil(static_cast<unsigned>(n * d.upward_reach() + 1)));
  opts.z_nodes = std::max(opts.z_nodes, 16);
  for (auto _ : state) benchmark::DoNotOptimize(invert_bivariate(sampler, n, n, opts));
}
BENCHMARK(BM_InvertBivariateProduct)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
