// Serial vs OpenMP line kernels on a 3D grid.
#include <benchmark/benchmark.h>

#include <random>

#include "cwave/operators.hpp"
#include "cwave/solvers.hpp"

using namespace cwave;

namespace {

GridFunction cube(int N) {
  std::vector<AxisMesh> axes;
  for (int k = 0; k < 3; ++k) axes.push_back(build_uniform_axis(N, 1.0, 0.0));
  GridFunction w(make_grid(std::move(axes)));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1, 1);
  for (double& x : w.values()) x = U(rng);
  return w;
}

Exec mode(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

void label(benchmark::State& s) { s.SetLabel(s.range(1) ? "parallel" : "serial"); }

void BM_apply_axis(benchmark::State& s) {
  const GridFunction w = cube(static_cast<int>(s.range(0)));
  GridFunction out = w;
  const LineStencil st = s_stencil(w.grid().axis(1));
  for (auto _ : s) {
    kernels::apply_axis(w.data(), out.data(), w.grid().shape(), 1, st, 1.0, mode(s));
    benchmark::DoNotOptimize(out.data());
  }
  label(s);
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(w.size()));
}

void BM_thomas_axis(benchmark::State& s) {
  GridFunction w = cube(static_cast<int>(s.range(0)));
  const TriFactor f = factor_BkN(w.grid().axis(1), 0.01, 1.0);
  for (auto _ : s) {
    kernels::thomas_axis(w.data(), w.grid().shape(), 1, f, mode(s));
    benchmark::DoNotOptimize(w.data());
  }
  label(s);
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(w.size()));
}

void BM_dst_axis(benchmark::State& s) {
  GridFunction w = cube(static_cast<int>(s.range(0)));
  for (auto _ : s) {
    kernels::dst_axis(w.data(), w.grid().shape(), 1, mode(s));
    benchmark::DoNotOptimize(w.data());
  }
  label(s);
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(w.size()));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int N : {32, 64, 128})
    for (int par : {0, 1}) b->Args({N, par});
  b->Unit(benchmark::kMicrosecond)->UseRealTime();
}

} // namespace

BENCHMARK(BM_apply_axis)->Apply(sizes);
BENCHMARK(BM_thomas_axis)->Apply(sizes);
BENCHMARK(BM_dst_axis)->Apply(sizes);

BENCHMARK_MAIN();
