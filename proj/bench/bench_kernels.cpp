// Serial reference kernels vs their OpenMP versions, and whole days at
// Tokyo scale. Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include "seirah/epidemic.hpp"
#include "seirah/scenario.hpp"

using namespace seirah;

namespace {

struct Fixture {
  Graph graph;
  std::vector<Status> statuses;

  explicit Fixture(std::uint32_t n) : graph(generate_newman_watts({n, 4, 0.05}, 1)), statuses(n, Status::S) {
    CounterRng rng(2, 0);
    for (auto& s : statuses) {
      const auto r = rng.below(100);
      s = r < 3 ? Status::E : r < 5 ? Status::I : r < 7 ? Status::A : Status::S;
    }
  }
};

template <bool Parallel>
void BM_MarkExposures(benchmark::State& st) {
  Fixture f(static_cast<std::uint32_t>(st.range(0)));
  std::vector<std::uint8_t> exposed(f.statuses.size(), 0);
  ZoneGraph zone{.graph = &f.graph};
  std::uint32_t day = 0;
  for (auto _ : st) {
    const auto n = Parallel ? kernels::mark_exposures_parallel(zone, f.statuses, 0.1, 7, day++, exposed)
                            : kernels::mark_exposures_serial(zone, f.statuses, 0.1, 7, day++, exposed);
    benchmark::DoNotOptimize(n);
    std::fill(exposed.begin(), exposed.end(), 0);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.graph.edge_count()) * 2);
}

template <bool Parallel>
void BM_Progress(benchmark::State& st) {
  Fixture f(static_cast<std::uint32_t>(st.range(0)));
  std::vector<std::int32_t> entered(f.statuses.size(), -1);
  const auto probs = effective_probabilities(table2_thresholds());
  std::int32_t day = 0;
  for (auto _ : st) {
    st.PauseTiming();
    auto statuses = f.statuses;
    st.ResumeTiming();
    const auto tally = Parallel ? kernels::progress_parallel(statuses, entered, probs, 3, day)
                                : kernels::progress_serial(statuses, entered, probs, 3, day);
    benchmark::DoNotOptimize(tally);
    ++day;
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.statuses.size()));
}

template <Execution Mode>
void BM_SimulateDay(benchmark::State& st) {
  Scenario sc;
  sc.regions = tokyo_regions(static_cast<double>(st.range(0)));
  sc.seeds_per_region = 0;
  const auto topo = sc.build();
  SimState base(topo.node_count(), 5);
  CounterRng rng(6, 0);
  for (NodeId v = 0; v < topo.node_count(); ++v) {
    if (rng.below(100) < 3) base.place(v, Status::I);
  }
  const std::vector<double> ind{0.8};
  for (auto _ : st) {
    st.PauseTiming();
    SimState state = base;
    st.ResumeTiming();
    benchmark::DoNotOptimize(simulate_day(state, topo, 0.1, ind, sc.thresholds, {Mode}));
  }
  st.counters["nodes"] = topo.node_count();
}

}  // namespace

BENCHMARK(BM_MarkExposures<false>)->Name("mark_exposures/serial")->Arg(100'000)->Arg(1'000'000);
BENCHMARK(BM_MarkExposures<true>)->Name("mark_exposures/omp")->Arg(100'000)->Arg(1'000'000);
BENCHMARK(BM_Progress<false>)->Name("progress/serial")->Arg(100'000)->Arg(1'000'000);
BENCHMARK(BM_Progress<true>)->Name("progress/omp")->Arg(100'000)->Arg(1'000'000);
BENCHMARK(BM_SimulateDay<Execution::kSerial>)->Name("simulate_day/serial")->Arg(1000)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateDay<Execution::kParallel>)->Name("simulate_day/omp")->Arg(1000)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
