#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace encmap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Axis-aligned rectangle [x0, x1] x [y0, y1], in meters.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double perimeter() const { return 2.0 * (width() + height()); }
  bool contains_closed(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  bool contains_open(Vec2 p) const { return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1; }
  Rect inflated(double by) const { return {x0 - by, y0 - by, x1 + by, y1 + by}; }
  bool operator==(const Rect&) const = default;
};

// Bounded planar arena with rectangular holes.
//
// Free space is the closed outer rectangle minus the open holes, so points on
// any wall belong to free space.
class Environment {
 public:
  // Throws ConfigError unless every hole lies strictly inside the outer
  // rectangle and holes are pairwise separated by a positive gap. Those two
  // conditions also make the free space connected.
  Environment(Rect outer, std::vector<Rect> holes = {});

  const Rect& outer() const { return outer_; }
  const std::vector<Rect>& holes() const { return holes_; }

  bool contains(Vec2 p) const;

  // Euclidean distance to the nearest wall (outer boundary or hole boundary).
  // Throws DomainError for points outside free space.
  double distance_to_boundary(Vec2 p) const;

  // Smallest gap between two holes or between a hole and the outer wall;
  // the outer rectangle's half-extent when there are no holes.
  double min_clearance() const;

  double free_area() const;

 private:
  Rect outer_;
  std::vector<Rect> holes_;
};

// (beta_0, beta_1) of the free space.
std::pair<int, int> betti_ground_truth(const Environment& env);

// Euclidean distance from p to a closed rectangle (0 inside).
double distance_to_rect(const Rect& r, Vec2 p);

class Rng;

// Places `n_holes` square holes of side `hole_side` uniformly at random in
// `outer`, keeping at least `clearance` between holes and from the outer wall.
// Throws ConfigError when no placement is found within the attempt budget.
Environment random_environment(Rect outer, int n_holes, double hole_side, double clearance,
                               Rng& rng);

}  // namespace encmap
