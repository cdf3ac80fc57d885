#include "encmap/env.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "encmap/error.hpp"
#include "encmap/rng.hpp"

namespace encmap {
namespace {

// Gap between two disjoint rectangles (0 when they touch or overlap).
double rect_gap(const Rect& a, const Rect& b) {
  const double dx = std::max({0.0, a.x0 - b.x1, b.x0 - a.x1});
  const double dy = std::max({0.0, a.y0 - b.y1, b.y0 - a.y1});
  return std::hypot(dx, dy);
}

double wall_gap(const Rect& outer, const Rect& hole) {
  return std::min({hole.x0 - outer.x0, outer.x1 - hole.x1, hole.y0 - outer.y0, outer.y1 - hole.y1});
}

bool overlaps_or_touches(const Rect& a, const Rect& b) {
  return a.x0 <= b.x1 && b.x0 <= a.x1 && a.y0 <= b.y1 && b.y0 <= a.y1;
}

}  // namespace

double distance_to_rect(const Rect& r, Vec2 p) {
  const double dx = std::max({0.0, r.x0 - p.x, p.x - r.x1});
  const double dy = std::max({0.0, r.y0 - p.y, p.y - r.y1});
  return std::hypot(dx, dy);
}

Environment::Environment(Rect outer, std::vector<Rect> holes)
    : outer_(outer), holes_(std::move(holes)) {
  if (!(outer_.x1 > outer_.x0) || !(outer_.y1 > outer_.y0)) {
    throw ConfigError("environment: outer rectangle has non-positive extent");
  }
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    const Rect& h = holes_[i];
    if (!(h.x1 > h.x0) || !(h.y1 > h.y0)) {
      throw ConfigError("environment: hole " + std::to_string(i) + " has non-positive extent");
    }
    if (!(wall_gap(outer_, h) > 0.0)) {
      throw ConfigError("environment: hole " + std::to_string(i) +
                        " is not strictly inside the outer rectangle");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (overlaps_or_touches(h, holes_[j])) {
        throw ConfigError("environment: holes " + std::to_string(j) + " and " +
                          std::to_string(i) + " overlap or touch");
      }
    }
  }
}

bool Environment::contains(Vec2 p) const {
  if (!outer_.contains_closed(p)) return false;
  return std::none_of(holes_.begin(), holes_.end(),
                      [&](const Rect& h) { return h.contains_open(p); });
}

double Environment::distance_to_boundary(Vec2 p) const {
  if (!contains(p)) throw DomainError("distance_to_boundary: point outside free space");
  double d = std::min({p.x - outer_.x0, outer_.x1 - p.x, p.y - outer_.y0, outer_.y1 - p.y});
  for (const Rect& h : holes_) d = std::min(d, distance_to_rect(h, p));
  return d;
}

double Environment::min_clearance() const {
  double c = 0.5 * std::min(outer_.width(), outer_.height());
  for (std::size_t i = 0; i < holes_.size(); ++i) {
    c = std::min(c, wall_gap(outer_, holes_[i]));
    for (std::size_t j = 0; j < i; ++j) c = std::min(c, rect_gap(holes_[i], holes_[j]));
  }
  return c;
}

double Environment::free_area() const {
  double a = outer_.width() * outer_.height();
  for (const Rect& h : holes_) a -= h.width() * h.height();
  return a;
}

std::pair<int, int> betti_ground_truth(const Environment& env) {
  return {1, static_cast<int>(env.holes().size())};
}

Environment random_environment(Rect outer, int n_holes, double hole_side, double clearance,
                               Rng& rng) {
  if (n_holes < 0 || !(hole_side > 0.0) || clearance < 0.0) {
    throw ConfigError("random_environment: invalid hole count, side or clearance");
  }
  const double lo_x = outer.x0 + clearance;
  const double hi_x = outer.x1 - clearance - hole_side;
  const double lo_y = outer.y0 + clearance;
  const double hi_y = outer.y1 - clearance - hole_side;
  if (n_holes > 0 && (hi_x < lo_x || hi_y < lo_y)) {
    throw ConfigError("random_environment: holes do not fit inside the arena");
  }
  constexpr int kAttempts = 10000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Rect> holes;
    bool ok = true;
    for (int h = 0; h < n_holes && ok; ++h) {
      const double x = rng.uniform(lo_x, hi_x);
      const double y = rng.uniform(lo_y, hi_y);
      const Rect cand{x, y, x + hole_side, y + hole_side};
      for (const Rect& other : holes) {
        if (overlaps_or_touches(cand.inflated(0.5 * clearance), other.inflated(0.5 * clearance))) {
          ok = false;
          break;
        }
      }
      holes.push_back(cand);
    }
    if (ok) return Environment(outer, std::move(holes));
  }
  throw ConfigError("random_environment: no valid placement after " +
                    std::to_string(kAttempts) + " attempts");
}

}  // namespace encmap
