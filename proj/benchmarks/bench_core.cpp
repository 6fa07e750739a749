#include <benchmark/benchmark.h>

#include <cmath>

#include "ist/evolution.hpp"
#include "ist/marchenko.hpp"
#include "ist/scattering.hpp"
#include "ist/threewave.hpp"

namespace {

ist::Potential make_potential(int n) {
  ist::Grid2D g(-4, 4, -4, 4, n);
  return ist::Potential::from_function(g, [](int c, double x, double y) {
    return ist::Complex(0.05 * c, -0.02 * c) * std::exp(-(x * x + y * y));
  });
}

void BM_Propagate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ist::Potential pot = make_potential(n);
  const ist::CharAxis ax(pot.grid());
  const ist::AsymptoticProfile a = ist::AsymptoticProfile::hat(ax, 1, ax.m() / 2);
  for (auto _ : state) benchmark::DoNotOptimize(ist::propagate(pot, a));
}
BENCHMARK(BM_Propagate)->Arg(64)->Arg(128);

void BM_Forward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ist::Potential pot = make_potential(n);
  for (auto _ : state) benchmark::DoNotOptimize(ist::forward_scattering(pot));
}
BENCHMARK(BM_Forward)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_MarchenkoNode(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ist::Potential pot = make_potential(n);
  const ist::ScatteringData scat = ist::forward_scattering(pot);
  for (auto _ : state)
    benchmark::DoNotOptimize(ist::solve_marchenko_A(scat, 0.0, 0.0));
}
BENCHMARK(BM_MarchenkoNode)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ist::Potential pot = make_potential(n);
  const ist::ScatteringData scat = ist::forward_scattering(pot);
  const ist::LaxParameters lax(1.0, 0.0, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ist::evolve(scat, lax, 0.37));
}
BENCHMARK(BM_Evolve)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ThreeWaveStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ist::Potential pot = make_potential(n);
  const ist::LaxParameters lax(1.0, 0.0, -1.0);
  const double dt = 0.5 * pot.grid().h();
  for (auto _ : state) benchmark::DoNotOptimize(ist::threewave_step(pot, lax, dt));
}
BENCHMARK(BM_ThreeWaveStep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
