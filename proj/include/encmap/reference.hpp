#pragma once

// Straightforward serial implementations of the parallel or optimised
// kernels. They exist to be compared against: tests use them as oracles and
// the benchmark target measures the speed-up over them.

#include <cstdint>
#include <vector>

#include "encmap/analysis.hpp"
#include "encmap/encounter.hpp"
#include "encmap/homology.hpp"
#include "encmap/metric.hpp"
#include "encmap/subsample.hpp"

namespace encmap::reference {

// All pairs checked at every frame, no spatial grid.
std::vector<EncounterEvent> detect_events(const Trajectory& traj, double r_d);

// Cubic dynamic-programming APSP.
DistanceMatrix floyd_warshall(const EncounterGraph& g);

// One single-thread Dijkstra per source over the graph as given.
DistanceMatrix dijkstra_apsp(const EncounterGraph& g);

// Minimum over every simple path by depth-first enumeration. n <= 8.
DistanceMatrix exhaustive_paths(const EncounterGraph& g);

// Column reduction of the full boundary matrix in filtration order, without
// clearing or any other shortcut.
PersistenceDiagram persistence_standard(const Filtration& f);

// Dimension-0 diagram by processing edges in ascending order with a
// union-find; every vertex is born at 0, so only the merge value matters.
PersistenceDiagram union_find_dim0(const DistanceMatrix& d, double eps_max);

KnnStats knn_stats(const DistanceMatrix& d, std::size_t k);
IndexList maxmin(const DistanceMatrix& d, std::size_t m, std::uint64_t seed);

// Grid search calling cost() for every cell in a single loop.
TrainResult train_grid(const TrainingSet& ts, const ParamGrid& grid);

}  // namespace encmap::reference
