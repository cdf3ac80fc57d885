#include "encmap/subsample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "encmap/error.hpp"
#include "encmap/rng.hpp"
#include "encmap/stats.hpp"

namespace encmap {
namespace {

struct Best {
  double score = -std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();

  void offer(double s, std::size_t i) {
    if (s > score || (s == score && i < index)) {
      score = s;
      index = i;
    }
  }
};

// Argmax of score over unselected candidates; ties go to the lowest index
// independent of thread scheduling.
std::size_t parallel_argmax(const std::vector<double>& score, const std::vector<char>& taken) {
  Best global;
  const auto n = static_cast<std::ptrdiff_t>(score.size());
#pragma omp parallel
  {
    Best local;
#pragma omp for nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      if (!taken[static_cast<std::size_t>(i)]) local.offer(score[static_cast<std::size_t>(i)], static_cast<std::size_t>(i));
    }
#pragma omp critical(encmap_argmax)
    global.offer(local.score, local.index);
  }
  return global.index;
}

// Greedy selection maximising min-distance + bonus[i].
IndexList greedy_select(const DistanceMatrix& d, std::size_t m, std::uint64_t seed,
                        const std::vector<double>* bonus) {
  const std::size_t n = d.size();
  if (m == 0 || m > n) {
    throw ParameterError("landmark count must satisfy 1 <= m <= n (m=" + std::to_string(m) +
                         ", n=" + std::to_string(n) + ")");
  }
  Rng rng(seed);
  IndexList out;
  out.reserve(m);
  std::vector<char> taken(n, 0);
  std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
  std::vector<double> score(n, 0.0);

  std::size_t next = static_cast<std::size_t>(rng.index(n));
  while (true) {
    out.push_back(next);
    taken[next] = 1;
    if (out.size() == m) break;
    const double* row = d.row(next);
    const auto n_signed = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for
    for (std::ptrdiff_t s = 0; s < n_signed; ++s) {
      const auto i = static_cast<std::size_t>(s);
      min_dist[i] = std::min(min_dist[i], row[i]);
      score[i] = bonus != nullptr ? min_dist[i] + (*bonus)[i] : min_dist[i];
    }
    next = parallel_argmax(score, taken);
  }
  return out;
}

}  // namespace

double density_delta(const DistanceMatrix& d) {
  const double m = d.max_finite();
  return m > 0.0 ? 1e-9 * m : 1e-9;
}

KnnStats knn_stats(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.size();
  if (k < 1 || k >= n) {
    throw ParameterError("knn_stats: need 1 <= k < n (k=" + std::to_string(k) +
                         ", n=" + std::to_string(n) + ")");
  }
  if (!d.all_finite()) throw ParameterError("knn_stats: distance matrix has infinite entries");

  KnnStats st;
  st.delta = density_delta(d);
  st.d_k.resize(n);
  st.d_bar_k.resize(n);
  st.rho_k.resize(n);
  const auto n_signed = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::vector<std::pair<double, std::size_t>> nb;
#pragma omp for
    for (std::ptrdiff_t s = 0; s < n_signed; ++s) {
      const auto i = static_cast<std::size_t>(s);
      nb.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) nb.emplace_back(d(i, j), j);
      }
      std::partial_sort(nb.begin(), nb.begin() + static_cast<std::ptrdiff_t>(k), nb.end());
      double sum = 0.0;
      for (std::size_t r = 0; r < k; ++r) sum += nb[r].first;
      st.d_k[i] = nb[k - 1].first;
      st.d_bar_k[i] = sum / static_cast<double>(k);
      st.rho_k[i] = 1.0 / (st.d_bar_k[i] + st.delta);
    }
  }
  return st;
}

IndexList knn_filter(const DistanceMatrix& d, std::size_t k, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw ParameterError("knn_filter: q must lie in (0, 1]");
  const KnnStats st = knn_stats(d, k);
  const double tau = nearest_rank_quantile(st.d_bar_k, q);
  IndexList v;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (st.d_bar_k[i] <= tau) v.push_back(i);
  }
  if (v.empty()) throw Error("knn_filter: empty selection");
  return v;
}

IndexList maxmin(const DistanceMatrix& d, std::size_t m, std::uint64_t seed) {
  return greedy_select(d, m, seed, nullptr);
}

IndexList prob_maxmin(const DistanceMatrix& d, std::size_t m, std::size_t k, double omega,
                      std::uint64_t seed) {
  if (!(omega >= 0.0)) throw ParameterError("prob_maxmin: omega must be non-negative");
  if (m > d.size() || m == 0) return greedy_select(d, m, seed, nullptr);  // throws
  if (m == 1 || omega == 0.0) return greedy_select(d, m, seed, nullptr);
  const KnnStats st = knn_stats(d, k);
  std::vector<double> bonus(st.rho_k.size());
  for (std::size_t i = 0; i < bonus.size(); ++i) bonus[i] = omega * st.rho_k[i];
  return greedy_select(d, m, seed, &bonus);
}

double autoscale_omega(const DistanceMatrix& d, std::size_t k, std::uint64_t seed) {
  const std::size_t n = d.size();
  if (n == 0) throw ParameterError("autoscale_omega: empty matrix");
  Rng rng(seed);
  const std::size_t first = static_cast<std::size_t>(rng.index(n));
  std::vector<double> u(d.row(first), d.row(first) + n);
  const KnnStats st = knn_stats(d, k);
  const double med_rho = nearest_rank_quantile(st.rho_k, 0.5);
  return nearest_rank_quantile(u, 0.5) / med_rho;
}

DistanceMatrix restrict(const DistanceMatrix& d, const IndexList& idx) {
  std::vector<char> seen(d.size(), 0);
  for (std::size_t i : idx) {
    if (i >= d.size()) throw ParameterError("restrict: index out of range");
    if (seen[i]) throw ParameterError("restrict: duplicate index");
    seen[i] = 1;
  }
  DistanceMatrix out(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = d(idx[a], idx[b]);
  }
  return out;
}

std::string_view subsample_method_name(SubsampleMethod m) {
  switch (m) {
    case SubsampleMethod::kMaxmin: return "maxmin";
    case SubsampleMethod::kKnnMaxmin: return "knn-maxmin";
    case SubsampleMethod::kProbMaxmin: return "prob-maxmin";
  }
  return "?";
}

SubsampleMethod parse_subsample_method(std::string_view s) {
  if (s == "maxmin") return SubsampleMethod::kMaxmin;
  if (s == "knn-maxmin") return SubsampleMethod::kKnnMaxmin;
  if (s == "prob-maxmin") return SubsampleMethod::kProbMaxmin;
  throw ConfigError("unknown subsample method '" + std::string(s) + "'");
}

IndexList select_landmarks(const DistanceMatrix& d, const SubsampleParams& p) {
  const std::size_t n = d.size();
  if (n == 0) throw ParameterError("select_landmarks: empty distance matrix");
  if (n == 1) return {0};
  switch (p.method) {
    case SubsampleMethod::kMaxmin:
      return maxmin(d, std::min(p.m, n), p.seed);
    case SubsampleMethod::kKnnMaxmin: {
      const IndexList v = knn_filter(d, std::min(p.k, n - 1), p.q);
      const DistanceMatrix sub = restrict(d, v);
      IndexList local = maxmin(sub, std::min(p.m, v.size()), p.seed);
      for (std::size_t& i : local) i = v[i];
      return local;
    }
    case SubsampleMethod::kProbMaxmin: {
      const std::size_t k = std::min(p.k, n - 1);
      const double omega = p.omega ? *p.omega : autoscale_omega(d, k, p.seed);
      return prob_maxmin(d, std::min(p.m, n), k, omega, p.seed);
    }
  }
  return {};
}

}  // namespace encmap
