#include <benchmark/benchmark.h>

#include "openxxz/bethe.hpp"
#include "openxxz/fusion.hpp"
#include "openxxz/transfer.hpp"

using namespace openxxz;

namespace {

BoundaryParams table_params() {
  BoundaryParams p;
  p.alpha_minus = Complex(0.0, 0.7);
  p.beta_minus = Complex(0.2, 0.0);
  p.theta_minus = Complex(0.0, 0.5);
  p.alpha_plus = Complex(0.0, 1.2);
  p.beta_plus = Complex(-0.2, 0.0);
  p.theta_plus = Complex(0.0, -1.1);
  return p;
}

ChainSpec table_spec(int n, Spin s) {
  ChainSpec spec;
  spec.n_sites = n;
  spec.spin_s = s;
  spec.eta = Complex(0.0, 0.3);
  spec.boundary = table_params();
  return spec;
}

const Complex kU(0.83, 0.31);

void bm_fused_r(benchmark::State& state) {
  const Spin j{static_cast<int>(state.range(0))};
  const Complex eta(0.0, 0.3);
  for (auto _ : state) {
    Matrix r = fused_r(j, j, kU, eta);
    benchmark::DoNotOptimize(r.data());
  }
}
BENCHMARK(bm_fused_r)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void bm_transfer(benchmark::State& state) {
  const ChainSpec spec = table_spec(static_cast<int>(state.range(0)),
                                    Spin{static_cast<int>(state.range(1))});
  for (auto _ : state) {
    Matrix t = transfer(spec.spin_s, spec, kU);
    benchmark::DoNotOptimize(t.data());
  }
}
BENCHMARK(bm_transfer)->Args({2, 2})->Args({3, 2})->Args({2, 3})->Args({3, 3});

void bm_spectrum(benchmark::State& state) {
  const ChainSpec spec = table_spec(static_cast<int>(state.range(0)),
                                    Spin{static_cast<int>(state.range(1))});
  for (auto _ : state) {
    auto levels = spectrum(spec);
    benchmark::DoNotOptimize(levels.data());
  }
}
BENCHMARK(bm_spectrum)->Args({2, 2})->Args({3, 2})->Args({3, 3});

void bm_q_fit(benchmark::State& state) {
  ChainSpec spec = table_spec(2, spin_one);
  SectorConfig sector;
  sector.branch = -1;
  sector.k = static_cast<int>(state.range(0));
  spec.boundary.theta_plus = solve_theta_plus(spec.boundary, sector, spec.eta);
  TransferCache cache(spec);
  const auto levels = spectrum(spec);
  for (auto _ : state) {
    int hits = 0;
    for (const auto& lv : levels)
      if (q_fit(cache, sector, lv)) ++hits;
    benchmark::DoNotOptimize(hits);
  }
}
BENCHMARK(bm_q_fit)->Arg(1)->Arg(3);

void bm_classify_sector(benchmark::State& state) {
  const ChainSpec spec = table_spec(2, spin_one);
  SectorConfig sector;
  sector.branch = -1;
  for (auto _ : state) {
    auto result = classify_k(spec, sector, 1);
    benchmark::DoNotOptimize(&result);
  }
}
BENCHMARK(bm_classify_sector);

}  // namespace

BENCHMARK_MAIN();
