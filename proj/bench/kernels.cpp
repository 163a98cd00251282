// Serial reference kernels against their OpenMP counterparts.
//
//   pdkr_bench --benchmark_filter=Closure
//
// The thread count argument is passed straight to the parallel kernel; on
// a single-core machine the parallel rows measure scheduling overhead only.

#include <benchmark/benchmark.h>

#include "pdkr/semigroup.hpp"
#include "pdkr/skeleton.hpp"

namespace {

  using namespace pdkr;

  std::vector<int> open_cells(int n) {
    std::vector<int> cells{1, 2, 3, 5};
    cells.resize(static_cast<std::size_t>(n));
    return cells;
  }

  void BM_ClosureSerial(benchmark::State& state) {
    GeneratorSet gens(Rational(7, 2), open_cells(static_cast<int>(state.range(0))));
    std::size_t  size = 0;
    for (auto _ : state) {
      Semigroup s = closure_serial(gens);
      size        = s.size();
      benchmark::DoNotOptimize(size);
    }
    state.counters["elements"] = static_cast<double>(size);
  }

  void BM_ClosureParallel(benchmark::State& state) {
    GeneratorSet gens(Rational(7, 2), open_cells(static_cast<int>(state.range(0))));
    int          workers = static_cast<int>(state.range(1));
    std::size_t  size    = 0;
    for (auto _ : state) {
      Semigroup s = closure_parallel(gens, {}, workers);
      size        = s.size();
      benchmark::DoNotOptimize(size);
    }
    state.counters["elements"] = static_cast<double>(size);
  }

  void BM_SubductionSerial(benchmark::State& state) {
    ImageSystem sys = ImageSystem::build(GeneratorSet(Rational(7, 2), open_cells(static_cast<int>(state.range(0)))));
    for (auto _ : state) {
      BitMatrix m = subduction_matrix(sys, Kernel::serial, 1);
      benchmark::DoNotOptimize(m.row(0));
    }
    state.counters["sets"] = static_cast<double>(sys.size());
  }

  void BM_SubductionParallel(benchmark::State& state) {
    ImageSystem sys = ImageSystem::build(GeneratorSet(Rational(7, 2), open_cells(static_cast<int>(state.range(0)))));
    int         workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
      BitMatrix m = subduction_matrix(sys, Kernel::parallel, workers);
      benchmark::DoNotOptimize(m.row(0));
    }
    state.counters["sets"] = static_cast<double>(sys.size());
  }

}  // namespace

BENCHMARK(BM_ClosureSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureParallel)->ArgsProduct({{2, 3}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubductionSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubductionParallel)->ArgsProduct({{3, 4}, {1, 2, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
