#include <benchmark/benchmark.h>

#include <random>

#include "ftvd/degrade.hpp"
#include "ftvd/phantom.hpp"
#include "ftvd/solvers.hpp"

namespace {

using namespace ftvd;

GradientField noise_field(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Image a(n);
  Image b(n);
  for (double& v : a.values()) v = dist(rng);
  for (double& v : b.values()) v = dist(rng);
  return GradientField(std::move(a), std::move(b));
}

void BM_SolveU(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Kernel k = make_kernel(kernel_spec::Average{9});
  const SpectralCache cache(k, n);
  const Image f = make_phantom(n);
  const GradientField w = noise_field(n);
  const GradientField lambda(n);
  for (auto _ : state) benchmark::DoNotOptimize(solve_u(f, w, lambda, 500.0, 10.0, cache));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_SolveU)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_ShrinkIso(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GradientField v = noise_field(n);
  for (auto _ : state) benchmark::DoNotOptimize(shrink_iso(v, 0.1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_ShrinkIso)->Arg(128)->Arg(512);

void BM_ShrinkAniso(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GradientField v = noise_field(n);
  for (auto _ : state) benchmark::DoNotOptimize(shrink_aniso(v, 0.1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_ShrinkAniso)->Arg(128)->Arg(512);

// Fixed number of ADM iterations, no early stop.
void BM_Ftvd4Iterations(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Kernel k = make_kernel(kernel_spec::Average{9});
  const SpectralCache cache(k, n);
  const Image f = degrade(make_phantom(n), k, 0.01, 0);
  SolverConfig cfg;
  cfg.mu = 500.0;
  cfg.tol = 1e-15;
  cfg.max_multiplier_updates = 20;
  cfg.retention = FieldRetention::kBestAndFinal;
  for (auto _ : state) benchmark::DoNotOptimize(ftvd4_solve(f, cache, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.max_multiplier_updates);
}
BENCHMARK(BM_Ftvd4Iterations)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Ftvd3Default(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Kernel k = make_kernel(kernel_spec::Average{9});
  const SpectralCache cache(k, n);
  const Image f = degrade(make_phantom(n), k, 0.01, 0);
  SolverConfig cfg;
  cfg.mu = 500.0;
  cfg.retention = FieldRetention::kBestAndFinal;
  for (auto _ : state) benchmark::DoNotOptimize(ftvd3_solve(f, cache, cfg));
}
BENCHMARK(BM_Ftvd3Default)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
