// Parallel kernels against their serial references on pipeline-sized inputs.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "encmap/analysis.hpp"
#include "encmap/encounter.hpp"
#include "encmap/homology.hpp"
#include "encmap/metric.hpp"
#include "encmap/reference.hpp"
#include "encmap/subsample.hpp"
#include "encmap/swarm.hpp"

using namespace encmap;

namespace {

struct Fixture {
  SimResult sim;
  std::vector<EncounterEvent> events;
  EncounterGraph chain;
  DistanceMatrix cloud;
  DistanceMatrix landmarks;
  TrainingSet training;
};

// One default swarm, built once and shared by every benchmark.
const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture x;
    const Environment env({0, 0, 10, 10}, {{3, 3, 7, 7}});
    SimConfig c;
    x.sim = simulate(c, MobilityParams{}, env, 0.3);
    x.events = detect_events(x.sim.trajectory, 0.3);
    x.chain = build_chain_graph(x.events, MetricMode::kContracted, stop_intervals(x.sim.status), {});
    const DistanceMatrix d = shortest_path_metric(x.chain);
    x.cloud = restrict(d, largest_component(d));
    SubsampleParams p;
    x.landmarks = restrict(x.cloud, select_landmarks(x.cloud, p));
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
      TrainingItem it;
      it.true_betti = static_cast<int>(rng.index(3));
      for (int i = 0; i < 40; ++i) it.lengths.push_back(rng.uniform01());
      for (int i = 0; i < it.true_betti; ++i) it.lengths.push_back(2.0 + rng.uniform01());
      x.training.push_back(it);
    }
    return x;
  }();
  return f;
}

void BM_events_grid(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(detect_events(fixture().sim.trajectory, 0.3));
}
void BM_events_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::detect_events(fixture().sim.trajectory, 0.3));
}

void BM_apsp_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(shortest_path_metric(fixture().chain));
}
void BM_apsp_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::dijkstra_apsp(fixture().chain));
}

void BM_knn_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(knn_stats(fixture().cloud, 10));
}
void BM_knn_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::knn_stats(fixture().cloud, 10));
}

void BM_maxmin_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(maxmin(fixture().cloud, 150, 1));
}
void BM_maxmin_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::maxmin(fixture().cloud, 150, 1));
}

void BM_persistence_cohomology(benchmark::State& st) {
  const DistanceMatrix& d = fixture().landmarks;
  for (auto _ : st) benchmark::DoNotOptimize(persistence_cohomology(d, d.max_finite()));
}
void BM_persistence_clearing(benchmark::State& st) {
  const DistanceMatrix& d = fixture().landmarks;
  for (auto _ : st) benchmark::DoNotOptimize(persistence(build_rips(d, d.max_finite())));
}
void BM_persistence_reference(benchmark::State& st) {
  const DistanceMatrix& d = fixture().landmarks;
  for (auto _ : st) benchmark::DoNotOptimize(reference::persistence_standard(build_rips(d, d.max_finite())));
}

void BM_train_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(train(fixture().training, ParamGrid::defaults()));
}
void BM_train_reference(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(reference::train_grid(fixture().training, ParamGrid::defaults()));
}

}  // namespace

BENCHMARK(BM_events_grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_events_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apsp_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apsp_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_knn_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_knn_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_maxmin_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_maxmin_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_persistence_cohomology)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_persistence_clearing)->Unit(benchmark::kMillisecond)->Iterations(2);
BENCHMARK(BM_persistence_reference)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_train_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_train_reference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
