#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "encmap/metric.hpp"

namespace encmap {

using IndexList = std::vector<std::size_t>;

struct KnnStats {
  std::vector<double> d_k;      // distance to the k-th nearest other point
  std::vector<double> d_bar_k;  // mean distance to the k nearest other points
  std::vector<double> rho_k;    // 1 / (d_bar_k + delta)
  double delta = 0.0;
};

// Regulariser added to mean neighbour distances: 1e-9 of the largest finite
// distance (1e-9 when every distance is zero).
double density_delta(const DistanceMatrix& d);

// Requires 1 <= k < n and finite entries; ties among neighbours are broken by
// index. Throws ParameterError otherwise.
KnnStats knn_stats(const DistanceMatrix& d, std::size_t k);

// Points whose mean k-NN distance is at most the nearest-rank q-quantile of
// all mean k-NN distances. q in (0, 1].
IndexList knn_filter(const DistanceMatrix& d, std::size_t k, double q);

// Greedy farthest-point selection. The first landmark is drawn uniformly
// with `seed`; each next one maximises the distance to the selected set
// (ties: lowest index). Returns m indices in selection order.
IndexList maxmin(const DistanceMatrix& d, std::size_t m, std::uint64_t seed);

// Density-weighted variant scoring each candidate by
// min-distance-to-landmarks + omega * rho_k.
IndexList prob_maxmin(const DistanceMatrix& d, std::size_t m, std::size_t k, double omega,
                      std::uint64_t seed);

// Default omega: median of the distances to the seed-chosen first landmark
// divided by the median density, so both score terms have comparable size.
double autoscale_omega(const DistanceMatrix& d, std::size_t k, std::uint64_t seed);

// Principal submatrix in the order of idx. Throws ParameterError on
// duplicate or out-of-range indices.
DistanceMatrix restrict(const DistanceMatrix& d, const IndexList& idx);

enum class SubsampleMethod { kMaxmin, kKnnMaxmin, kProbMaxmin };
std::string_view subsample_method_name(SubsampleMethod m);  // maxmin | knn-maxmin | prob-maxmin
SubsampleMethod parse_subsample_method(std::string_view s);  // throws ConfigError

struct SubsampleParams {
  SubsampleMethod method = SubsampleMethod::kKnnMaxmin;
  std::size_t m = 150;
  std::size_t k = 10;
  double q = 0.9;
  std::optional<double> omega;  // autoscaled when empty
  std::uint64_t seed = 1;
};

// Runs the chosen selector on a finite matrix; m is clamped to the number of
// candidates. Returned indices refer to d.
IndexList select_landmarks(const DistanceMatrix& d, const SubsampleParams& p);

}  // namespace encmap
