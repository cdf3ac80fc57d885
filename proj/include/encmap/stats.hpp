#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace encmap {

// 0-based position of the nearest-rank q-quantile in a sorted sample of size
// n: element ceil(q * n) (1-based), clamped to [1, n]. The small slack keeps
// products such as 0.9 * 150 from rounding up to the next rank.
inline std::size_t nearest_rank_index(double q, std::size_t n) {
  const double r = std::ceil(q * static_cast<double>(n) - 1e-9);
  const auto rank = static_cast<std::size_t>(std::max(1.0, r));
  return std::min(rank, n) - 1;
}

// Nearest-rank q-quantile of an unsorted sample; 0 for an empty one.
inline double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  const std::size_t k = nearest_rank_index(q, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

}  // namespace encmap
