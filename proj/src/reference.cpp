#include "encmap/reference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <utility>

#include "encmap/error.hpp"
#include "encmap/rng.hpp"

namespace encmap::reference {
namespace {

void sort_and_drop_zero(PersistenceDiagram& dgm) {
  std::erase_if(dgm.points, [](const PersistencePoint& p) { return p.death == p.birth; });
  std::sort(dgm.points.begin(), dgm.points.end());
}

std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(const EncounterGraph& g) {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(g.vertices.size());
  for (const GraphEdge& e : g.edges) {
    adj[e.i].emplace_back(e.j, e.w);
    adj[e.j].emplace_back(e.i, e.w);
  }
  return adj;
}

}  // namespace

std::vector<EncounterEvent> detect_events(const Trajectory& traj, double r_d) {
  if (traj.n_frames() == 0 || traj.n_agents == 0) throw ParameterError("empty trajectory");
  const double r2 = r_d * r_d;
  const auto n = static_cast<std::size_t>(traj.n_agents);
  std::vector<char> prev(n * n, 0);
  std::vector<EncounterEvent> out;
  for (int f = 0; f < traj.n_frames(); ++f) {
    for (AgentId a = 0; a < traj.n_agents; ++a) {
      for (AgentId b = a + 1; b < traj.n_agents; ++b) {
        const Vec2 d = traj.at(f, a) - traj.at(f, b);
        const bool in = d.x * d.x + d.y * d.y <= r2;
        char& was = prev[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
        if (in && !was) out.push_back({traj.times[static_cast<std::size_t>(f)], a, b});
        was = in;
      }
    }
  }
  return out;
}

DistanceMatrix floyd_warshall(const EncounterGraph& g) {
  const std::size_t n = g.vertices.size();
  DistanceMatrix d(n, kInf);
  for (const GraphEdge& e : g.edges) {
    if (e.w < d(e.i, e.j)) d.set(e.i, e.j, e.w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double via = d(i, k) + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
    }
  }
  return d;
}

DistanceMatrix dijkstra_apsp(const EncounterGraph& g) {
  const std::size_t n = g.vertices.size();
  const auto adj = adjacency(g);
  DistanceMatrix d(n, kInf);
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> dist(n, kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [du, u] = heap.top();
      heap.pop();
      if (du > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (du + w < dist[v]) {
          dist[v] = du + w;
          heap.push({dist[v], v});
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) d(s, j) = dist[j];
  }
  return d;
}

DistanceMatrix exhaustive_paths(const EncounterGraph& g) {
  const std::size_t n = g.vertices.size();
  if (n > 8) throw ParameterError("exhaustive_paths: at most 8 vertices");
  const auto adj = adjacency(g);
  DistanceMatrix d(n, kInf);
  std::vector<char> on_path(n, 0);
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t s, std::size_t u,
                                                                  double len) {
    d(s, u) = std::min(d(s, u), len);
    on_path[u] = 1;
    for (const auto& [v, w] : adj[u]) {
      if (!on_path[v]) walk(s, v, len + w);
    }
    on_path[u] = 0;
  };
  for (std::size_t s = 0; s < n; ++s) walk(s, s, 0.0);
  return d;
}

PersistenceDiagram persistence_standard(const Filtration& f) {
  const std::size_t n = f.simplices.size();
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t c = 0; c < n; ++c) {
    const Simplex& s = f.simplices[c];
    index[std::vector<std::uint32_t>(s.v.begin(), s.v.begin() + s.dim + 1)] = c;
  }
  // Columns as sorted sets of row indices; the pivot is the largest.
  std::vector<std::set<std::size_t>> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    const Simplex& s = f.simplices[c];
    if (s.dim == 0) continue;
    std::vector<std::uint32_t> verts(s.v.begin(), s.v.begin() + s.dim + 1);
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      std::vector<std::uint32_t> face;
      for (std::size_t k = 0; k < verts.size(); ++k) {
        if (k != drop) face.push_back(verts[k]);
      }
      col[c].insert(index.at(face));
    }
  }
  std::map<std::size_t, std::size_t> owner;  // pivot row -> column
  std::vector<char> paired(n, 0);
  PersistenceDiagram dgm;
  for (std::size_t c = 0; c < n; ++c) {
    while (!col[c].empty()) {
      auto it = owner.find(*col[c].rbegin());
      if (it == owner.end()) break;
      for (std::size_t r : col[it->second]) {
        if (!col[c].erase(r)) col[c].insert(r);
      }
    }
    if (col[c].empty()) continue;
    const std::size_t low = *col[c].rbegin();
    owner[low] = c;
    paired[low] = paired[c] = 1;
    const Simplex& birth = f.simplices[low];
    if (birth.dim <= 1) dgm.points.push_back({birth.dim, birth.value, f.simplices[c].value});
  }
  for (std::size_t c = 0; c < n; ++c) {
    const Simplex& s = f.simplices[c];
    if (!paired[c] && col[c].empty() && s.dim <= 1) {
      dgm.points.push_back({s.dim, s.value, std::numeric_limits<double>::infinity()});
    }
  }
  sort_and_drop_zero(dgm);
  return dgm;
}

PersistenceDiagram union_find_dim0(const DistanceMatrix& d, double eps_max) {
  const std::size_t n = d.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) <= eps_max) edges.emplace_back(d(i, j), i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  PersistenceDiagram dgm;
  std::size_t components = n;
  for (const auto& [w, i, j] : edges) {
    const std::size_t a = find(i), b = find(j);
    if (a == b) continue;
    parent[std::max(a, b)] = std::min(a, b);
    dgm.points.push_back({0, 0.0, w});
    --components;
  }
  for (std::size_t c = 0; c < components; ++c) {
    dgm.points.push_back({0, 0.0, std::numeric_limits<double>::infinity()});
  }
  sort_and_drop_zero(dgm);
  return dgm;
}

KnnStats knn_stats(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.size();
  if (k < 1 || k >= n) throw ParameterError("knn_stats: need 1 <= k < n");
  KnnStats st;
  st.delta = density_delta(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> nb;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) nb.emplace_back(d(i, j), j);
    }
    std::sort(nb.begin(), nb.end());
    double sum = 0.0;
    for (std::size_t r = 0; r < k; ++r) sum += nb[r].first;
    st.d_k.push_back(nb[k - 1].first);
    st.d_bar_k.push_back(sum / static_cast<double>(k));
    st.rho_k.push_back(1.0 / (st.d_bar_k.back() + st.delta));
  }
  return st;
}

IndexList maxmin(const DistanceMatrix& d, std::size_t m, std::uint64_t seed) {
  const std::size_t n = d.size();
  if (m == 0 || m > n) throw ParameterError("maxmin: need 1 <= m <= n");
  Rng rng(seed);
  IndexList out{static_cast<std::size_t>(rng.index(n))};
  while (out.size() < m) {
    std::size_t best = n;
    double best_score = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::find(out.begin(), out.end(), i) != out.end()) continue;
      double u = std::numeric_limits<double>::infinity();
      for (std::size_t l : out) u = std::min(u, d(i, l));
      if (u > best_score) {
        best_score = u;
        best = i;
      }
    }
    out.push_back(best);
  }
  return out;
}

TrainResult train_grid(const TrainingSet& ts, const ParamGrid& grid) {
  TrainResult best;
  bool have = false;
  for (double q : grid.q) {
    for (double delta : grid.delta) {
      for (double tau : grid.tau) {
        const ClassifierParams th{q, delta, tau};
        const double c = cost(th, ts);
        bool better = !have || c < best.cost;
        if (have && c == best.cost) {
          const double dq = std::abs(q - 0.5), bq = std::abs(best.theta.q - 0.5);
          better = dq != bq ? dq < bq
                 : tau != best.theta.tau ? tau < best.theta.tau
                 : delta != best.theta.delta ? delta < best.theta.delta
                 : q < best.theta.q;
        }
        if (better) {
          best.theta = th;
          best.cost = c;
          have = true;
        }
      }
    }
  }
  best.grid_cost = best.cost;
  return best;
}

}  // namespace encmap::reference
