#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "encmap/analysis.hpp"
#include "encmap/env.hpp"
#include "encmap/metric.hpp"
#include "encmap/subsample.hpp"
#include "encmap/swarm.hpp"

namespace encmap {

// Square holes dropped at random into the arena, one layout per run seed.
struct RandomLayout {
  int n_holes = 1;
  double hole_side = 4.0;
  double clearance = 1.5;
};

enum class BatchMode { kSnr, kTrain, kEvaluate };

struct BatchConfig {
  int n_runs = 1;
  std::uint64_t seed_base = 1;
  BatchMode mode = BatchMode::kSnr;
  std::vector<SubsampleMethod> methods{SubsampleMethod::kMaxmin, SubsampleMethod::kKnnMaxmin,
                                       SubsampleMethod::kProbMaxmin};
  std::optional<RandomLayout> layout;  // fixed environment when empty
  bool keep_artifacts = false;         // per-run CSVs besides the summaries
};

// Everything one pipeline run needs. Units: meters, seconds.
struct Scenario {
  Environment env{Rect{0, 0, 10, 10}, {Rect{3, 3, 7, 7}}};
  MobilityParams mobility;
  double r_d = 0.3;
  SimConfig sim;
  MetricMode metric_mode = MetricMode::kContracted;
  SubsampleParams subsample;
  std::optional<double> eps_max;  // max finite landmark distance when empty
  int embed_dim = 3;
  bool write_trajectory = false;
  ClassifierParams classifier;
  std::optional<double> smooth_alpha = 50.0;  // training refinement, off when empty
  BatchConfig batch;

  void validate() const;  // throws ConfigError

  // Overrides the simulation and subsampling seeds together.
  void set_seed(std::uint64_t seed);
};

// Parses the YAML scenario format. Unknown keys are rejected so typos do not
// silently fall back to defaults. Throws ConfigError (or IoError when the
// file cannot be read).
Scenario load_scenario(const std::filesystem::path& p);
Scenario parse_scenario(const std::string& yaml_text);

// Canonical YAML for a scenario; parse_scenario(dump_scenario(s)) == s.
std::string dump_scenario(const Scenario& s);

std::string_view batch_mode_name(BatchMode m);
BatchMode parse_batch_mode(std::string_view s);

}  // namespace encmap
