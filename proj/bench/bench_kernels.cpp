#include <benchmark/benchmark.h>

#include <cmath>

#include "tsfrac/delta_calculus.hpp"
#include "tsfrac/kernels.hpp"

namespace {

using namespace tsfrac;

// Mixed scale: a continuum followed by a run of isolated points.
struct Fixture {
  GridPtr grid;
  std::vector<double> u;
  std::vector<double> f;

  explicit Fixture(int panels) {
    std::vector<Component> comps{Interval{0.0, 1.0}};
    for (int k = 1; k <= panels / 4; ++k) comps.push_back(Point{1.0 + k / double(panels)});
    grid = make_grid(TimeScale(std::move(comps)), panels);
    u = psi_nodes(*grid, PsiFunction::power(1.5));
    for (double t : grid->times()) f.push_back(std::cos(3.0 * t));
  }
};

template <bool Parallel>
void BM_LeftAll(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  const std::size_t last = fx.u.size() - 1;
  for (auto _ : state) {
    auto r = Parallel ? kernels::left_all(fx.u, fx.grid->steps(), fx.f, 0, last, 0.6)
                      : kernels::serial::left_all(fx.u, fx.grid->steps(), fx.f, 0, last, 0.6);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetComplexityN(state.range(0));
}

template <bool Parallel>
void BM_RightAll(benchmark::State& state) {
  const Fixture fx(static_cast<int>(state.range(0)));
  const std::size_t last = fx.u.size() - 1;
  for (auto _ : state) {
    auto r = Parallel ? kernels::right_all(fx.u, fx.grid->steps(), fx.f, 0, last, 0.6)
                      : kernels::serial::right_all(fx.u, fx.grid->steps(), fx.f, 0, last, 0.6);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_LeftAll<false>)->Name("left_all/serial")->RangeMultiplier(2)->Range(256, 4096)->Complexity();
BENCHMARK(BM_LeftAll<true>)->Name("left_all/openmp")->RangeMultiplier(2)->Range(256, 4096)->Complexity();
BENCHMARK(BM_RightAll<false>)->Name("right_all/serial")->RangeMultiplier(2)->Range(256, 4096)->Complexity();
BENCHMARK(BM_RightAll<true>)->Name("right_all/openmp")->RangeMultiplier(2)->Range(256, 4096)->Complexity();

BENCHMARK_MAIN();
