#include "encmap/homology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>

#include "encmap/error.hpp"

namespace encmap {
namespace {

using Column = std::vector<std::uint32_t>;  // ascending row indices

// a <- a xor b on sorted index sets.
void add_column(Column& a, const Column& b, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(scratch));
  a.swap(scratch);
}

bool simplex_less(const Simplex& x, const Simplex& y) {
  if (x.value != y.value) return x.value < y.value;
  if (x.dim != y.dim) return x.dim < y.dim;
  return std::lexicographical_compare(x.v.begin(), x.v.begin() + x.dim + 1, y.v.begin(),
                                      y.v.begin() + y.dim + 1);
}

void finish(PersistenceDiagram& dgm) {
  auto& p = dgm.points;
  p.erase(std::remove_if(p.begin(), p.end(),
                         [](const PersistencePoint& x) { return x.death == x.birth; }),
          p.end());
  std::sort(p.begin(), p.end());
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;  // keep the smaller index as root
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

void check_matrix(const DistanceMatrix& d, const char* who) {
  if (d.size() == 0) throw ParameterError(std::string(who) + ": empty distance matrix");
  if (!d.all_finite()) throw ParameterError(std::string(who) + ": distances must be finite");
}

struct EdgeKey {
  double value;
  std::uint32_t a, b;
  bool operator<(const EdgeKey& o) const { return std::tie(value, a, b) < std::tie(o.value, o.a, o.b); }
};

}  // namespace

int PersistenceDiagram::betti_at(int dim, double eps) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [&](const PersistencePoint& p) {
    return p.dim == dim && p.birth <= eps && eps < p.death;
  }));
}

int PersistenceDiagram::infinite_count(int dim) const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [&](const PersistencePoint& p) {
    return p.dim == dim && std::isinf(p.death);
  }));
}

Filtration build_rips(const DistanceMatrix& d, double eps_max) {
  check_matrix(d, "build_rips");
  if (!(eps_max > 0.0)) throw ParameterError("build_rips: eps_max must be positive");
  const std::size_t n = d.size();
  Filtration f;
  f.n_vertices = n;
  f.eps_max = eps_max;
  for (std::uint32_t i = 0; i < n; ++i) f.simplices.push_back({{i, 0, 0}, 0, 0.0});
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (d(i, j) <= eps_max) f.simplices.push_back({{i, j, 0}, 1, d(i, j)});
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double dij = d(i, j);
      if (dij > eps_max) continue;
      for (std::uint32_t k = j + 1; k < n; ++k) {
        const double dik = d(i, k), djk = d(j, k);
        if (dik > eps_max || djk > eps_max) continue;
        f.simplices.push_back({{i, j, k}, 2, std::max({dij, dik, djk})});
      }
    }
  }
  std::sort(f.simplices.begin(), f.simplices.end(), simplex_less);
  return f;
}

PersistenceDiagram persistence(const Filtration& f) {
  const std::size_t n = f.n_vertices;
  const auto& s = f.simplices;
  constexpr auto kNone = static_cast<std::uint32_t>(-1);

  std::vector<std::uint32_t> vertex_pos(n, kNone);
  std::vector<std::uint32_t> edge_pos(n * n, kNone);
  for (std::uint32_t p = 0; p < s.size(); ++p) {
    if (s[p].dim == 0) vertex_pos[s[p].v[0]] = p;
    if (s[p].dim == 1) edge_pos[s[p].v[0] * n + s[p].v[1]] = p;
  }

  PersistenceDiagram dgm;
  std::vector<char> cleared(s.size(), 0);
  std::unordered_map<std::uint32_t, Column> reduced;  // pivot row -> reduced column
  Column col, scratch;

  auto reduce = [&](Column& c) {
    while (!c.empty()) {
      auto it = reduced.find(c.back());
      if (it == reduced.end()) break;
      add_column(c, it->second, scratch);
    }
  };

  // Triangles first; each pivot edge is a cycle creator and gets cleared.
  for (std::uint32_t p = 0; p < s.size(); ++p) {
    if (s[p].dim != 2) continue;
    const auto [a, b, c] = s[p].v;
    col = {edge_pos[a * n + b], edge_pos[a * n + c], edge_pos[b * n + c]};
    std::sort(col.begin(), col.end());
    reduce(col);
    if (col.empty()) continue;
    const std::uint32_t pivot = col.back();
    cleared[pivot] = 1;
    dgm.points.push_back({1, s[pivot].value, s[p].value});
    reduced.emplace(pivot, std::move(col));
    col = Column{};
  }

  reduced.clear();
  std::vector<char> vertex_dead(s.size(), 0);
  for (std::uint32_t p = 0; p < s.size(); ++p) {
    if (s[p].dim != 1 || cleared[p]) continue;
    col = {vertex_pos[s[p].v[0]], vertex_pos[s[p].v[1]]};
    std::sort(col.begin(), col.end());
    reduce(col);
    if (col.empty()) {
      dgm.points.push_back({1, s[p].value, kInf});  // never filled below eps_max
      continue;
    }
    const std::uint32_t pivot = col.back();
    vertex_dead[pivot] = 1;
    dgm.points.push_back({0, 0.0, s[p].value});
    reduced.emplace(pivot, std::move(col));
    col = Column{};
  }
  for (std::uint32_t p = 0; p < s.size(); ++p) {
    if (s[p].dim == 0 && !vertex_dead[p]) dgm.points.push_back({0, 0.0, kInf});
  }
  finish(dgm);
  return dgm;
}

PersistenceDiagram persistence_cohomology(const DistanceMatrix& d, double eps_max) {
  check_matrix(d, "persistence_cohomology");
  if (!(eps_max > 0.0)) throw ParameterError("persistence_cohomology: eps_max must be positive");
  const auto n = static_cast<std::uint32_t>(d.size());

  std::vector<EdgeKey> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (d(i, j) <= eps_max) edges.push_back({d(i, j), i, j});
    }
  }
  std::sort(edges.begin(), edges.end());

  PersistenceDiagram dgm;
  // Dimension 0: an edge joining two components kills the later vertex.
  UnionFind uf(n);
  std::vector<char> negative(edges.size(), 0);
  std::size_t components = n;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (uf.unite(edges[e].a, edges[e].b)) {
      negative[e] = 1;
      --components;
      dgm.points.push_back({0, 0.0, edges[e].value});
    }
  }
  for (std::size_t c = 0; c < components; ++c) dgm.points.push_back({0, 0.0, kInf});

  // Dimension 1: coboundary columns of the cycle-creating edges, processed
  // from the last edge backwards. Rows are triangles keyed by (value, lex)
  // and the pivot is the earliest triangle in the column.
  struct Tri {
    double value;
    std::uint64_t code;  // lexicographic rank of the sorted vertex triple
    bool operator<(const Tri& o) const { return std::tie(value, code) < std::tie(o.value, o.code); }
    bool operator==(const Tri& o) const { return code == o.code; }
  };
  const std::uint64_t nn = n;
  auto tri = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    std::uint32_t v[3] = {a, b, c};
    std::sort(v, v + 3);
    return Tri{std::max({d(a, b), d(a, c), d(b, c)}), (v[0] * nn + v[1]) * nn + v[2]};
  };

  std::unordered_map<std::uint64_t, std::vector<Tri>> owner;  // pivot code -> reduced column
  std::vector<Tri> col, scratch;
  for (std::size_t e = edges.size(); e-- > 0;) {
    if (negative[e]) continue;
    const auto [value, a, b] = edges[e];
    col.clear();
    for (std::uint32_t k = 0; k < n; ++k) {
      if (k == a || k == b || d(a, k) > eps_max || d(b, k) > eps_max) continue;
      col.push_back(tri(a, b, k));
    }
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      auto it = owner.find(col.front().code);
      if (it == owner.end()) break;
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(), it->second.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (col.empty()) {
      dgm.points.push_back({1, value, kInf});
      continue;
    }
    dgm.points.push_back({1, value, col.front().value});
    owner.emplace(col.front().code, col);
  }
  finish(dgm);
  return dgm;
}

std::vector<double> interval_lengths(const PersistenceDiagram& dgm, int dim, double eps_max) {
  std::vector<double> out;
  for (const PersistencePoint& p : dgm.points) {
    if (p.dim != dim || std::isinf(p.death) || p.death > eps_max) continue;
    out.push_back(p.death - p.birth);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::pair<int, int> brute_force_homology(const DistanceMatrix& d, double eps) {
  const std::size_t n = d.size();
  if (n > 10) throw ParameterError("brute_force_homology: refuses n > 10");
  if (n == 0) return {0, 0};

  // Rank over Z/2 of a set of bit vectors, by elimination on leading bits.
  auto rank = [](std::vector<std::uint64_t> rows) {
    int r = 0;
    for (int bit = 63; bit >= 0; --bit) {
      const std::uint64_t mask = std::uint64_t{1} << bit;
      auto it = std::find_if(rows.begin() + r, rows.end(), [&](std::uint64_t x) { return x & mask; });
      if (it == rows.end()) continue;
      std::swap(*it, rows[static_cast<std::size_t>(r)]);
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k != static_cast<std::size_t>(r) && (rows[k] & mask)) rows[k] ^= rows[static_cast<std::size_t>(r)];
      }
      ++r;
    }
    return r;
  };

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<int> edge_id(n * n, -1);
  std::vector<std::uint64_t> d1;  // edge -> vertex bits
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) > eps) continue;
      edge_id[i * n + j] = static_cast<int>(edges.size());
      edges.emplace_back(i, j);
      d1.push_back((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
    }
  }
  std::vector<std::uint64_t> d2;  // triangle -> edge bits (at most 45 edges)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const int ij = edge_id[i * n + j], ik = edge_id[i * n + k], jk = edge_id[j * n + k];
        if (ij < 0 || ik < 0 || jk < 0) continue;
        d2.push_back((std::uint64_t{1} << ij) | (std::uint64_t{1} << ik) | (std::uint64_t{1} << jk));
      }
    }
  }
  const int r1 = rank(d1);
  const int r2 = rank(d2);
  const int b0 = static_cast<int>(n) - r1;
  const int b1 = static_cast<int>(edges.size()) - r1 - r2;
  return {b0, b1};
}

PersistenceDiagram graph_dim0_diagram(std::size_t n_vertices, const std::vector<GraphEdge>& edges) {
  std::vector<GraphEdge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const GraphEdge& x, const GraphEdge& y) {
    return std::tie(x.w, x.i, x.j) < std::tie(y.w, y.i, y.j);
  });
  PersistenceDiagram dgm;
  UnionFind uf(n_vertices);
  std::size_t components = n_vertices;
  for (const GraphEdge& e : sorted) {
    if (uf.unite(e.i, e.j)) {
      --components;
      dgm.points.push_back({0, 0.0, e.w});
    }
  }
  for (std::size_t c = 0; c < components; ++c) dgm.points.push_back({0, 0.0, kInf});
  finish(dgm);
  return dgm;
}

}  // namespace encmap
