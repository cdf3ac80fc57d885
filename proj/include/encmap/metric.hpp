#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "encmap/encounter.hpp"
#include "encmap/swarm.hpp"

namespace encmap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense symmetric n x n matrix of non-negative distances; +inf marks
// unreachable pairs. Zero off-diagonal entries are allowed (pseudometric).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, double fill = 0.0) : n_(n), d_(n * n, fill) {
    for (std::size_t i = 0; i < n; ++i) d_[i * n + i] = 0.0;
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return d_[i * n_ + j]; }
  const double* row(std::size_t i) const { return d_.data() + i * n_; }

  // Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

  double max_finite() const;
  bool all_finite() const;
  bool operator==(const DistanceMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

enum class MetricMode { kPlain, kContracted, kHybrid };
std::string_view metric_mode_name(MetricMode m);
MetricMode parse_metric_mode(std::string_view s);  // throws ConfigError

using StaticSet = std::set<AgentId>;

struct GraphEdge {
  std::size_t i = 0;
  std::size_t j = 0;  // i < j
  double w = 0.0;
  bool operator==(const GraphEdge&) const = default;
};

struct EncounterGraph {
  std::vector<EncounterEvent> vertices;
  std::vector<GraphEdge> edges;  // sorted by (i, j)
};

// Weight of the edge between two events, or nullopt when they share no agent.
// plain: |t_i - t_j|. contracted: 0 when both times fall in one stop interval
// of the shared agent. hybrid: additionally 0 when the shared agent is static.
// With two shared agents the smaller weight wins.
std::optional<double> edge_weight(const EncounterEvent& a, const EncounterEvent& b, MetricMode mode,
                                  const StopIntervals& stops, const StaticSet& static_set);

// Encounter graph with one edge per pair of events sharing an agent.
// Events are grouped per agent, so the cost is the sum of squared per-agent
// event counts rather than the square of the total.
EncounterGraph build_graph(const std::vector<EncounterEvent>& events, MetricMode mode,
                           const StopIntervals& stops, const StaticSet& static_set);

// Sparse graph with the same shortest-path metric as build_graph: each agent
// contributes only the edges between its time-consecutive events. Valid
// because any weight between two events of one agent is at least the sum of
// the consecutive weights in between (stop intervals are convex in time).
EncounterGraph build_chain_graph(const std::vector<EncounterEvent>& events, MetricMode mode,
                                 const StopIntervals& stops, const StaticSet& static_set);

// All-pairs shortest paths by one binary-heap Dijkstra per source, sources
// spread over OpenMP threads. Unreachable pairs get +inf. The lower triangle is
// mirrored from the upper one so the result is exactly symmetric.
DistanceMatrix shortest_path_metric(const EncounterGraph& g);

// Connected components of the finite-distance relation; labels are
// 0..count-1, numbered by smallest member index.
std::vector<int> component_labels(const DistanceMatrix& d, int* count = nullptr);

// Indices of the largest component (ties: the one with the smaller first
// index), ascending.
std::vector<std::size_t> largest_component(const DistanceMatrix& d);

}  // namespace encmap
