#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "encmap/metric.hpp"
#include "encmap/reference.hpp"
#include "helpers.hpp"

using namespace encmap;

namespace {

EncounterGraph chain(std::size_t n, std::initializer_list<GraphEdge> edges) {
  EncounterGraph g;
  g.vertices.resize(n);
  g.edges = edges;
  return g;
}

// Random graph with integer-millisecond weights, including zero weights.
EncounterGraph random_graph(std::size_t n, double p, Rng& rng) {
  EncounterGraph g;
  g.vertices.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) g.edges.push_back({i, j, static_cast<double>(rng.index(4000)) / 1000.0});
    }
  }
  return g;
}

// Random event log on a few agents with stop intervals.
struct Log {
  std::vector<EncounterEvent> events;
  StopIntervals stops;
  StaticSet statics;
};

Log random_log(Rng& rng, int agents, int n_events) {
  Log l;
  for (int k = 0; k < n_events; ++k) {
    const auto a = static_cast<AgentId>(rng.index(static_cast<std::uint64_t>(agents)));
    auto b = static_cast<AgentId>(rng.index(static_cast<std::uint64_t>(agents - 1)));
    if (b >= a) ++b;
    l.events.push_back({static_cast<double>(rng.index(20000)) / 1000.0, std::min(a, b), std::max(a, b)});
  }
  std::sort(l.events.begin(), l.events.end());
  l.events.erase(std::unique(l.events.begin(), l.events.end()), l.events.end());
  for (AgentId a = 0; a < agents; ++a) {
    double t = 0.0;
    while (t < 20.0) {
      const double begin = t + static_cast<double>(rng.index(5000)) / 1000.0;
      const double end = begin + static_cast<double>(rng.index(4000)) / 1000.0;
      l.stops[a].push_back({begin, end});
      t = end + 0.5;
    }
  }
  l.statics = {0, 1};
  return l;
}

bool close(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

bool close(const DistanceMatrix& a, const DistanceMatrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!close(a(i, j), b(i, j))) return false;
    }
  }
  return true;
}

void check_pseudometric(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(d(i, i) == 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(d(i, j) == d(j, i));
      CHECK(d(i, j) >= 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        // 1 ulp of slack per addition.
        const double via = d(i, k) + d(k, j);
        if (!(d(i, j) <= via * (1 + 1e-15))) CHECK(d(i, j) <= via * (1 + 1e-15));
      }
    }
  }
}

}  // namespace

TEST_SUITE("metric") {
  TEST_CASE("edge weights for the three modes") {
    const EncounterEvent e1{2.0, 1, 2}, e2{5.0, 2, 3}, e3{4.0, 4, 5};
    StopIntervals stops;
    CHECK(edge_weight(e1, e2, MetricMode::kPlain, stops, {}) == 3.0);
    CHECK_FALSE(edge_weight(e1, e3, MetricMode::kPlain, stops, {}).has_value());
    stops[2] = {{1.5, 6.0}};
    CHECK(edge_weight(e1, e2, MetricMode::kContracted, stops, {}) == 0.0);
    CHECK(edge_weight(e1, e2, MetricMode::kPlain, stops, {}) == 3.0);
    StopIntervals none;
    CHECK(edge_weight(e1, e2, MetricMode::kHybrid, none, {2}) == 0.0);
    CHECK(edge_weight(e1, e2, MetricMode::kHybrid, none, {7}) == 3.0);
    // Contracted rule also applies in hybrid mode.
    CHECK(edge_weight(e1, e2, MetricMode::kHybrid, stops, {}) == 0.0);
    // Times in two different stop intervals do not contract.
    stops[2] = {{1.5, 3.0}, {4.0, 6.0}};
    CHECK(edge_weight(e1, e2, MetricMode::kContracted, stops, {}) == 3.0);
  }

  TEST_CASE("two shared agents: the smaller weight wins") {
    const EncounterEvent a{1.0, 3, 4}, b{6.0, 3, 4};
    StopIntervals stops;
    stops[4] = {{0.5, 7.0}};
    CHECK(edge_weight(a, b, MetricMode::kContracted, stops, {}) == 0.0);
  }

  TEST_CASE("graph construction") {
    const std::vector<EncounterEvent> disjoint{{1, 0, 1}, {2, 2, 3}, {3, 4, 5}};
    CHECK(build_graph(disjoint, MetricMode::kPlain, {}, {}).edges.empty());

    const std::vector<EncounterEvent> path{{1, 1, 2}, {2, 2, 3}, {3, 3, 4}};
    const auto g = build_graph(path, MetricMode::kPlain, {}, {});
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0] == GraphEdge{0, 1, 1.0});
    CHECK(g.edges[1] == GraphEdge{1, 2, 1.0});

    const std::vector<EncounterEvent> star{{1, 0, 7}, {2, 1, 7}, {3, 2, 7}, {4, 3, 7}};
    CHECK(build_graph(star, MetricMode::kPlain, {}, {}).edges.size() == 6);
    CHECK(build_graph({}, MetricMode::kPlain, {}, {}).vertices.empty());
  }

  TEST_CASE("shortest paths: small cases") {
    const DistanceMatrix d = shortest_path_metric(chain(3, {{0, 1, 3.0}, {1, 2, 4.0}}));
    CHECK(d(0, 2) == 7.0);
    const DistanceMatrix e = shortest_path_metric(chain(3, {{0, 1, 3.0}}));
    CHECK(e(0, 2) == kInf);
    CHECK(e(2, 2) == 0.0);
  }

  TEST_CASE("shortest paths agree with exhaustive enumeration on 6-vertex graphs") {
    Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
      const EncounterGraph g = random_graph(6, 0.5, rng);
      CHECK(close(shortest_path_metric(g), reference::exhaustive_paths(g)));
    }
  }

  TEST_CASE("shortest paths agree with Floyd-Warshall and serial Dijkstra") {
    Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 20 + rng.index(180);
      const EncounterGraph g = random_graph(n, 3.0 / static_cast<double>(n), rng);
      const DistanceMatrix d = shortest_path_metric(g);
      CHECK(close(d, reference::floyd_warshall(g)));
      CHECK(close(d, reference::dijkstra_apsp(g)));
    }
  }

  TEST_CASE("chain graph has the same metric as the full graph") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
      const Log l = random_log(rng, 8, 60);
      for (MetricMode m : {MetricMode::kPlain, MetricMode::kContracted, MetricMode::kHybrid}) {
        const auto full = build_graph(l.events, m, l.stops, l.statics);
        const auto sparse = build_chain_graph(l.events, m, l.stops, l.statics);
        CHECK(sparse.edges.size() <= full.edges.size());
        CHECK(shortest_path_metric(sparse) == shortest_path_metric(full));
      }
    }
  }

  TEST_CASE("property: pseudometric axioms and mode monotonicity on random logs") {
    Rng rng(24);
    for (int trial = 0; trial < 100; ++trial) {
      const Log l = random_log(rng, 6, 30);
      const auto plain = shortest_path_metric(build_graph(l.events, MetricMode::kPlain, l.stops, l.statics));
      const auto con = shortest_path_metric(build_graph(l.events, MetricMode::kContracted, l.stops, l.statics));
      const auto hyb = shortest_path_metric(build_graph(l.events, MetricMode::kHybrid, l.stops, l.statics));
      check_pseudometric(plain);
      check_pseudometric(con);
      check_pseudometric(hyb);
      for (std::size_t i = 0; i < plain.size(); ++i) {
        for (std::size_t j = 0; j < plain.size(); ++j) {
          CHECK(con(i, j) <= plain(i, j));
          CHECK(hyb(i, j) <= con(i, j));
        }
      }
    }
  }

  TEST_CASE("scaling event times scales the plain metric") {
    // Dyadic times and factor keep every product exact.
    Rng rng(25);
    Log l = random_log(rng, 6, 40);
    for (EncounterEvent& e : l.events) e.t = std::floor(e.t * 16.0) / 16.0;
    std::sort(l.events.begin(), l.events.end());
    l.events.erase(std::unique(l.events.begin(), l.events.end()), l.events.end());
    std::vector<EncounterEvent> scaled = l.events;
    for (EncounterEvent& e : scaled) e.t *= 4.0;
    const auto a = shortest_path_metric(build_chain_graph(l.events, MetricMode::kPlain, {}, {}));
    const auto b = shortest_path_metric(build_chain_graph(scaled, MetricMode::kPlain, {}, {}));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < a.size(); ++j) CHECK(b(i, j) == 4.0 * a(i, j));
    }
  }

  TEST_CASE("components") {
    DistanceMatrix d(5, kInf);
    d.set(0, 3, 1.0);
    d.set(1, 2, 1.0);
    d.set(2, 4, 2.0);
    d.set(1, 4, 3.0);
    int count = 0;
    const auto labels = component_labels(d, &count);
    CHECK(count == 2);
    CHECK(labels == std::vector<int>{0, 1, 1, 0, 1});
    CHECK(largest_component(d) == std::vector<std::size_t>{1, 2, 4});
  }
}
