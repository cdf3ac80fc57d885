#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "encmap/metric.hpp"

namespace encmap {

// Vertex, edge or triangle of a Vietoris-Rips complex.
struct Simplex {
  std::array<std::uint32_t, 3> v{};  // ascending; only the first dim+1 are used
  std::uint8_t dim = 0;
  double value = 0.0;  // 0 for vertices, d(i, j) for edges, max edge for triangles
};

// Rips filtration up to dimension 2, ordered by (value, dim, lexicographic
// vertices). Every face precedes its cofaces.
struct Filtration {
  std::size_t n_vertices = 0;
  double eps_max = 0.0;
  std::vector<Simplex> simplices;
};

struct PersistencePoint {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;  // +inf for classes that never die
  auto operator<=>(const PersistencePoint&) const = default;
};

struct PersistenceDiagram {
  std::vector<PersistencePoint> points;  // sorted by (dim, birth, death)

  // Number of dim-n classes alive at scale eps (birth <= eps < death).
  int betti_at(int dim, double eps) const;
  int infinite_count(int dim) const;
};

// All vertices, edges with d(i, j) <= eps_max and triangles whose three edges
// are present. Throws ParameterError on an empty or non-finite matrix.
Filtration build_rips(const DistanceMatrix& d, double eps_max);

// Boundary-matrix reduction over Z/2 with clearing: triangle columns are
// reduced first, and every edge they pair with is cleared from the edge pass.
// Zero-length intervals are dropped.
PersistenceDiagram persistence(const Filtration& f);

// Same pairs as persistence(), computed by reducing the coboundary matrix of
// the edges (cohomology). Triangles are never materialised as columns, which
// makes this the fast path for landmark sets of a few hundred points.
PersistenceDiagram persistence_cohomology(const DistanceMatrix& d, double eps_max);

// Finite interval lengths (death - birth) in dimension dim, largest first.
// Deaths beyond eps_max count as censored and are excluded like infinite ones.
std::vector<double> interval_lengths(const PersistenceDiagram& dgm, int dim, double eps_max);

// (beta_0, beta_1) of the Rips complex at the fixed scale eps, by ranks of the
// boundary maps over Z/2. Test oracle; refuses n > 10.
std::pair<int, int> brute_force_homology(const DistanceMatrix& d, double eps);

// Dimension-0 diagram of a weighted graph via Kruskal-style union-find.
PersistenceDiagram graph_dim0_diagram(std::size_t n_vertices, const std::vector<GraphEdge>& edges);

}  // namespace encmap
