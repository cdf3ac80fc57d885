#include "encmap/metric.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>
#include <utility>

#include "encmap/error.hpp"

namespace encmap {
namespace {

bool same_stop(AgentId k, double ta, double tb, const StopIntervals& stops) {
  auto it = stops.find(k);
  if (it == stops.end()) return false;
  const std::vector<Interval>& iv = it->second;
  // First interval ending at or after the earlier time.
  const double lo = std::min(ta, tb);
  const double hi = std::max(ta, tb);
  auto pos = std::lower_bound(iv.begin(), iv.end(), lo,
                              [](const Interval& x, double t) { return x.end < t; });
  return pos != iv.end() && pos->contains(lo) && pos->contains(hi);
}

double weight_via(AgentId k, const EncounterEvent& a, const EncounterEvent& b, MetricMode mode,
                  const StopIntervals& stops, const StaticSet& static_set) {
  if (mode == MetricMode::kHybrid && static_set.count(k) != 0) return 0.0;
  if (mode != MetricMode::kPlain && same_stop(k, a.t, b.t, stops)) return 0.0;
  return std::abs(a.t - b.t);
}

// Events grouped by participating agent, each group in event order.
std::map<AgentId, std::vector<std::size_t>> group_by_agent(const std::vector<EncounterEvent>& ev) {
  std::map<AgentId, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    groups[ev[i].id_a].push_back(i);
    groups[ev[i].id_b].push_back(i);
  }
  return groups;
}

// Sorts by (i, j, w) and keeps the lightest edge per pair.
void dedupe_edges(std::vector<GraphEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
    return std::tie(x.i, x.j, x.w) < std::tie(y.i, y.j, y.w);
  });
  auto last = std::unique(edges.begin(), edges.end(), [](const GraphEdge& x, const GraphEdge& y) {
    return x.i == y.i && x.j == y.j;
  });
  edges.erase(last, edges.end());
}

}  // namespace

double DistanceMatrix::max_finite() const {
  double m = 0.0;
  for (double v : d_) {
    if (std::isfinite(v)) m = std::max(m, v);
  }
  return m;
}

bool DistanceMatrix::all_finite() const {
  return std::all_of(d_.begin(), d_.end(), [](double v) { return std::isfinite(v); });
}

std::string_view metric_mode_name(MetricMode m) {
  switch (m) {
    case MetricMode::kPlain: return "plain";
    case MetricMode::kContracted: return "contracted";
    case MetricMode::kHybrid: return "hybrid";
  }
  return "?";
}

MetricMode parse_metric_mode(std::string_view s) {
  if (s == "plain") return MetricMode::kPlain;
  if (s == "contracted") return MetricMode::kContracted;
  if (s == "hybrid") return MetricMode::kHybrid;
  throw ConfigError("unknown metric mode '" + std::string(s) + "'");
}

std::optional<double> edge_weight(const EncounterEvent& a, const EncounterEvent& b, MetricMode mode,
                                  const StopIntervals& stops, const StaticSet& static_set) {
  std::optional<double> w;
  for (AgentId k : {a.id_a, a.id_b}) {
    if (!b.involves(k)) continue;
    const double wk = weight_via(k, a, b, mode, stops, static_set);
    w = w ? std::min(*w, wk) : wk;
  }
  return w;
}

EncounterGraph build_graph(const std::vector<EncounterEvent>& events, MetricMode mode,
                           const StopIntervals& stops, const StaticSet& static_set) {
  EncounterGraph g;
  g.vertices = events;
  for (const auto& [agent, idx] : group_by_agent(events)) {
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = x + 1; y < idx.size(); ++y) {
        const std::size_t i = idx[x], j = idx[y];
        const double w = weight_via(agent, events[i], events[j], mode, stops, static_set);
        g.edges.push_back({std::min(i, j), std::max(i, j), w});
      }
    }
  }
  dedupe_edges(g.edges);
  return g;
}

EncounterGraph build_chain_graph(const std::vector<EncounterEvent>& events, MetricMode mode,
                                 const StopIntervals& stops, const StaticSet& static_set) {
  EncounterGraph g;
  g.vertices = events;
  for (auto [agent, idx] : group_by_agent(events)) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return events[x].t < events[y].t; });
    for (std::size_t x = 0; x + 1 < idx.size(); ++x) {
      const std::size_t i = idx[x], j = idx[x + 1];
      const double w = weight_via(agent, events[i], events[j], mode, stops, static_set);
      g.edges.push_back({std::min(i, j), std::max(i, j), w});
    }
  }
  dedupe_edges(g.edges);
  return g;
}

namespace {

// Weights that are whole microseconds (all event-time differences are) are
// summed as integers, so every path order gives the same bits.
constexpr double kTicksPerSecond = 1e6;

bool as_ticks(double w, std::int64_t& ticks) {
  const double x = w * kTicksPerSecond;
  if (!(x < 4e15)) return false;
  ticks = std::llround(x);
  return std::abs(x - static_cast<double>(ticks)) <= 1e-4;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Dijkstra from every zero-weight class of the graph. Vertices joined by
// zero-weight paths have identical rows, so each class is solved once and its
// row copied to all members. W is the accumulation type.
template <typename W>
void class_dijkstra(const EncounterGraph& g, const std::vector<W>& weight, W unreachable,
                    double (*to_seconds)(W), DistanceMatrix& d) {
  const std::size_t n = g.vertices.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (weight[e] == W{0}) {
      const std::size_t a = find_root(parent, g.edges[e].i), b = find_root(parent, g.edges[e].j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> cls(n), first_member;
  {
    std::vector<std::size_t> index_of_root(n, n);
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t r = find_root(parent, v);
      if (index_of_root[r] == n) {
        index_of_root[r] = first_member.size();
        first_member.push_back(v);
      }
      cls[v] = index_of_root[r];
    }
  }
  const std::size_t nc = first_member.size();
  std::vector<std::vector<std::size_t>> members(nc);
  for (std::size_t v = 0; v < n; ++v) members[cls[v]].push_back(v);

  // CSR adjacency of the quotient graph.
  std::vector<std::size_t> offset(nc + 1, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const std::size_t a = cls[g.edges[e].i], b = cls[g.edges[e].j];
    if (a == b) continue;
    ++offset[a + 1];
    ++offset[b + 1];
  }
  for (std::size_t c = 0; c < nc; ++c) offset[c + 1] += offset[c];
  std::vector<std::pair<std::size_t, W>> adj(offset[nc]);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const std::size_t a = cls[g.edges[e].i], b = cls[g.edges[e].j];
      if (a == b) continue;
      adj[fill[a]++] = {b, weight[e]};
      adj[fill[b]++] = {a, weight[e]};
    }
  }

  const auto nc_signed = static_cast<std::ptrdiff_t>(nc);
  using Item = std::pair<W, std::size_t>;
#pragma omp parallel
  {
    std::vector<W> dist(nc);
    std::vector<double> row(n);
    std::vector<Item> storage;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < nc_signed; ++s) {
      const auto src = static_cast<std::size_t>(s);
      std::fill(dist.begin(), dist.end(), unreachable);
      storage.clear();
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap(std::greater<>{},
                                                                        std::move(storage));
      dist[src] = W{0};
      heap.push({W{0}, src});
      while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du > dist[u]) continue;
        for (std::size_t k = offset[u]; k < offset[u + 1]; ++k) {
          const auto [v, w] = adj[k];
          const W nd = du + w;
          if (nd < dist[v]) {
            dist[v] = nd;
            heap.push({nd, v});
          }
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        const W x = dist[cls[j]];
        row[j] = x == unreachable ? kInf : to_seconds(x);
      }
      for (std::size_t v : members[src]) {
        std::copy(row.begin(), row.end(), &d(v, 0));
        d(v, v) = 0.0;
      }
    }
  }
}

}  // namespace

DistanceMatrix shortest_path_metric(const EncounterGraph& g) {
  const std::size_t n = g.vertices.size();
  bool integral = true;
  std::vector<std::int64_t> ticks(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (!(g.edges[e].w >= 0.0)) throw ParameterError("shortest_path_metric: negative edge weight");
    integral = integral && as_ticks(g.edges[e].w, ticks[e]);
  }

  DistanceMatrix d(n, kInf);
  if (integral) {
    // Integer distances are exactly symmetric already.
    class_dijkstra<std::int64_t>(
        g, ticks, std::numeric_limits<std::int64_t>::max(),
        [](std::int64_t t) { return static_cast<double>(t) / kTicksPerSecond; }, d);
  } else {
    std::vector<double> w(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) w[e] = g.edges[e].w;
    class_dijkstra<double>(g, w, kInf, [](double x) { return x; }, d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) d(j, i) = d(i, j);
    }
  }
  return d;
}

std::vector<int> component_labels(const DistanceMatrix& d, int* count) {
  const std::size_t n = d.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    // Shortest-path matrices are transitively closed, so one row is the component.
    for (std::size_t j = 0; j < n; ++j) {
      if (std::isfinite(d(s, j))) label[j] = next;
    }
    label[s] = next;
    ++next;
  }
  if (count != nullptr) *count = next;
  return label;
}

std::vector<std::size_t> largest_component(const DistanceMatrix& d) {
  int count = 0;
  const std::vector<int> label = component_labels(d, &count);
  std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
  for (int l : label) ++sizes[static_cast<std::size_t>(l)];
  const auto best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] == best) idx.push_back(i);
  }
  return idx;
}

}  // namespace encmap
