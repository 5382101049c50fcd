// Serial reference vs OpenMP kernels on example16 workloads.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "cantor_moran/cantor_moran.hpp"

using namespace moran;

namespace {

struct Level3 {
  DiscreteMeasure mu;
  ExactTransformPlan plan;
  std::vector<std::int64_t> lambdas;
  std::vector<double> xis;
  std::vector<double> grid;
  std::vector<TailFactor> factors;
  Mask mask;
  std::int64_t b = 0, c = 0;

  static Level3& get() {
    static Level3 w = make();
    return w;
  }

 private:
  static Level3 make() {
    const auto ex = build_example16_system();
    auto mu = finite_level(ex, 3);
    ExactTransformPlan plan(mu);
    std::vector<std::int64_t> lambdas;
    for (const auto& l : spectrum_level(ex, 3).lambdas) lambdas.push_back(l.get_si());
    std::vector<TailFactor> factors;
    Integer Q = 1;
    for (std::size_t k = 6; k <= 20; ++k) {
      Q *= ex.N(k);
      const double b = static_cast<double>(ex.b(k));
      factors.push_back({Mask(ex.digits(k), Rational(1) / Rational(Q)), b / to_double(Q), 2.0 / b});
    }
    const auto l20 = ex.level(20);
    return Level3{std::move(mu),
                  std::move(plan),
                  std::move(lambdas),
                  seeded_frequencies(1, 100),
                  uniform_grid(-2.0 / 3.0, 2.0 / 3.0, 10'000),
                  std::move(factors),
                  Mask(l20.B),
                  l20.b,
                  count_shifted(l20.b, l20.B)};
  }
};

template <bool Parallel>
void BM_FirstNonorthogonalPair(benchmark::State& state) {
  auto& w = Level3::get();
  for (auto _ : state) {
    auto r = Parallel ? parallel::first_nonorthogonal_pair(w.plan, w.lambdas)
                      : serial::first_nonorthogonal_pair(w.plan, w.lambdas);
    benchmark::DoNotOptimize(r);
  }
  state.counters["pairs"] = static_cast<double>(w.lambdas.size() * (w.lambdas.size() - 1) / 2);
}

template <bool Parallel>
void BM_GramDeviation(benchmark::State& state) {
  auto& w = Level3::get();
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? parallel::gram_deviation(w.plan, w.lambdas)
                                      : serial::gram_deviation(w.plan, w.lambdas));
}

template <bool Parallel>
void BM_ParsevalDeviation(benchmark::State& state) {
  auto& w = Level3::get();
  for (auto _ : state)
    benchmark::DoNotOptimize(Parallel ? parallel::parseval_deviation(w.plan, w.lambdas, w.xis)
                                      : serial::parseval_deviation(w.plan, w.lambdas, w.xis));
}

template <bool Parallel>
void BM_TransformGrid(benchmark::State& state) {
  auto& w = Level3::get();
  for (auto _ : state) {
    auto r = Parallel ? parallel::transform_grid(w.mu, w.grid) : serial::transform_grid(w.mu, w.grid);
    benchmark::DoNotOptimize(r.data());
  }
}

template <bool Parallel>
void BM_MaskMargins(benchmark::State& state) {
  auto& w = Level3::get();
  for (auto _ : state) {
    auto r = Parallel ? parallel::mask_margins(w.mask, w.b, w.c, w.grid)
                      : serial::mask_margins(w.mask, w.b, w.c, w.grid);
    benchmark::DoNotOptimize(r.data());
  }
}

template <bool Parallel>
void BM_TailGrid(benchmark::State& state) {
  auto& w = Level3::get();
  for (auto _ : state) {
    auto r = Parallel ? parallel::tail_grid(w.factors, w.grid) : serial::tail_grid(w.factors, w.grid);
    benchmark::DoNotOptimize(r.direct.data());
  }
}

}  // namespace

BENCHMARK(BM_FirstNonorthogonalPair<false>)->Name("first_pair/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FirstNonorthogonalPair<true>)->Name("first_pair/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_GramDeviation<false>)->Name("gram/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramDeviation<true>)->Name("gram/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ParsevalDeviation<false>)->Name("parseval/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParsevalDeviation<true>)->Name("parseval/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TransformGrid<false>)->Name("transform_grid/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransformGrid<true>)->Name("transform_grid/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MaskMargins<false>)->Name("mask_margins/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaskMargins<true>)->Name("mask_margins/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TailGrid<false>)->Name("tail_grid/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TailGrid<true>)->Name("tail_grid/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
