#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "encmap/env.hpp"
#include "encmap/metric.hpp"
#include "encmap/rng.hpp"

namespace testutil {

// Symmetric matrix with i.i.d. integer-valued entries in [1, hi]; ties are
// common, which is what exercises tie-breaking.
inline encmap::DistanceMatrix random_matrix(std::size_t n, encmap::Rng& rng, int hi = 20) {
  encmap::DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, 1.0 + static_cast<double>(rng.index(hi)));
  }
  return d;
}

// Euclidean distances between random points of the unit square.
inline encmap::DistanceMatrix random_planar(std::size_t n, encmap::Rng& rng,
                                            std::vector<encmap::Vec2>* pts = nullptr) {
  std::vector<encmap::Vec2> p(n);
  for (auto& v : p) v = {rng.uniform01(), rng.uniform01()};
  encmap::DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, encmap::norm(p[i] - p[j]));
  }
  if (pts) *pts = p;
  return d;
}

inline encmap::DistanceMatrix from_points(const std::vector<encmap::Vec2>& p) {
  encmap::DistanceMatrix d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) d.set(i, j, encmap::norm(p[i] - p[j]));
  }
  return d;
}

inline encmap::DistanceMatrix unit_square() {
  return from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline encmap::DistanceMatrix circle(std::size_t n, double r = 1.0) {
  std::vector<encmap::Vec2> p;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
    p.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return from_points(p);
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("encmap_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testutil
