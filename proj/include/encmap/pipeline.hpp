#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "encmap/analysis.hpp"
#include "encmap/encounter.hpp"
#include "encmap/homology.hpp"
#include "encmap/metric.hpp"
#include "encmap/scenario.hpp"
#include "encmap/subsample.hpp"
#include "encmap/swarm.hpp"

namespace encmap {

// Wall-clock seconds per stage. Kept out of every output file so repeated
// runs stay byte-identical.
using Timings = std::vector<std::pair<std::string, double>>;

// Simulation through the encounter metric.
struct CloudResult {
  SimResult sim;
  std::vector<EncounterEvent> events;
  DistanceMatrix dist;          // all events
  IndexList component;          // largest connected component, event indices
  int n_components = 0;
  double discarded_fraction = 0.0;
  PersistenceDiagram dgm0_full;  // dimension 0 of the whole encounter graph
  DistanceMatrix cloud;          // dist restricted to `component`
};

CloudResult build_cloud(const Scenario& s, const Environment& env, Timings* timings = nullptr);

// Subsampling and persistence on one point cloud.
struct TopologyResult {
  IndexList landmarks;  // indices into the cloud
  DistanceMatrix landmark_dist;
  double eps_max = 0.0;
  PersistenceDiagram dgm;
  std::vector<double> lengths1;  // finite dim-1 lengths, longest first
};

TopologyResult analyse_cloud(const DistanceMatrix& cloud, const SubsampleParams& p,
                             std::optional<double> eps_max, Timings* timings = nullptr);

struct PipelineResult {
  CloudResult cloud;
  TopologyResult topo;
  IndexList landmark_events;  // landmarks as indices into the event list
  std::pair<int, int> betti_true{0, 0};
  std::pair<int, int> betti_hat{0, 0};
  SnrResult snr;
  double gap_ratio = 0.0;
  Embedding embedding;
  std::vector<std::string> warnings;
  Timings timings;
};

// All stages in memory, on the scenario's own environment or on `env`.
PipelineResult run_stages(const Scenario& s, const Environment* env = nullptr);

// run_stages plus every artifact: status.csv, events.csv, dist.csv,
// landmarks.csv, dgm.csv, dgm0_full.csv, embedding.csv, summary.json and,
// when requested, traj.csv.
PipelineResult run_pipeline(const Scenario& s, const std::filesystem::path& out_dir,
                            const Environment* env = nullptr);

struct MethodSnr {
  SubsampleMethod method = SubsampleMethod::kMaxmin;
  SnrResult snr;
};

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  int betti_true1 = 0;
  int betti_hat1 = 0;
  std::vector<double> lengths1;  // from the scenario's subsampling method
  std::vector<MethodSnr> snr;    // one per batch method (snr mode)
};

struct MethodAggregate {
  SubsampleMethod method = SubsampleMethod::kMaxmin;
  double mean_snr = 0.0;         // +inf as soon as one run has an empty noise set
  double mean_finite_snr = 0.0;  // over runs with a finite value
  int infinite = 0;
  int runs = 0;
};

struct BatchResult {
  std::vector<RunRecord> runs;  // in run order
  int failed = 0;
  std::vector<MethodAggregate> methods;
  std::optional<TrainResult> training;
  ClassifierParams theta;  // trained, or the scenario's in evaluate mode
  double sensitivity = 0.0;
};

// Environment used by batch run `seed`: the scenario's own, or a random
// layout drawn from a stream derived from the seed and the hole count.
Environment batch_environment(const Scenario& s, std::uint64_t seed);

// Runs seeds seed_base .. seed_base + n_runs - 1 over OpenMP threads.
// Failed runs are recorded; only a batch where every run fails throws.
// With a non-empty out_dir it writes batch_summary.json, snr.csv or
// classifier.csv, and one summary per run under runs/.
BatchResult run_batch(const Scenario& s, const std::filesystem::path& out_dir,
                      std::ostream* log = nullptr);

}  // namespace encmap
