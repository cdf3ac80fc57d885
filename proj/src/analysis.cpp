#include "encmap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "encmap/error.hpp"
#include "encmap/stats.hpp"

namespace encmap {
namespace {

double mean_square(std::vector<double>::const_iterator first,
                   std::vector<double>::const_iterator last) {
  double s = 0.0;
  for (auto it = first; it != last; ++it) s += *it * *it;
  return s / static_cast<double>(last - first);
}

// Training item prepared for repeated evaluation: ascending lengths.
struct Prepared {
  std::vector<double> asc;
  int truth = 0;
};

// Same predicate as betti_function, evaluated by binary search on ascending
// lengths (division by a positive number is monotone under rounding).
int count_above(const std::vector<double>& asc, double l_q, double delta, double tau) {
  if (asc.empty()) return 0;
  const double denom = l_q + delta;
  if (denom == 0.0) throw SingularityError("betti function: quantile plus delta is zero");
  auto it = std::partition_point(asc.begin(), asc.end(),
                                 [&](double l) { return !(l / denom - tau > 0.0); });
  return static_cast<int>(asc.end() - it);
}

double quantile_sorted(const std::vector<double>& asc, double q) {
  return asc.empty() ? 0.0 : asc[nearest_rank_index(q, asc.size())];
}

std::vector<Prepared> prepare(const TrainingSet& ts) {
  std::vector<Prepared> out;
  out.reserve(ts.size());
  for (const TrainingItem& it : ts) {
    Prepared p{it.lengths, it.true_betti};
    std::sort(p.asc.begin(), p.asc.end());
    out.push_back(std::move(p));
  }
  return out;
}

long error_sum(const std::vector<Prepared>& items, const ClassifierParams& th) {
  long s = 0;
  for (const Prepared& p : items) {
    s += std::labs(count_above(p.asc, quantile_sorted(p.asc, th.q), th.delta, th.tau) - p.truth);
  }
  return s;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double smoothed(const std::vector<Prepared>& items, const ClassifierParams& th, double alpha) {
  double total = 0.0;
  for (const Prepared& p : items) {
    if (p.asc.empty()) {
      total += p.truth;
      continue;
    }
    const double denom = quantile_sorted(p.asc, th.q) + th.delta;
    if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
    double soft = 0.0;
    for (double l : p.asc) soft += sigmoid(alpha * (l / denom - th.tau));
    total += std::abs(soft - p.truth);
  }
  return total / static_cast<double>(items.size());
}

// True when a should win a tie against b. The median comes first: on a
// zero-cost plateau the smallest tau otherwise sits at q near 1, a rule that
// only counts the top few bars and breaks as soon as the hole count changes.
bool preferred(const ClassifierParams& a, const ClassifierParams& b) {
  const double da = std::abs(a.q - 0.5), db = std::abs(b.q - 0.5);
  if (da != db) return da < db;
  if (a.tau != b.tau) return a.tau < b.tau;
  if (a.delta != b.delta) return a.delta < b.delta;
  return a.q < b.q;
}

std::vector<double> range_inclusive(double lo, double hi, double step) {
  std::vector<double> v;
  const int n = static_cast<int>(std::llround((hi - lo) / step));
  for (int i = 0; i <= n; ++i) v.push_back(std::round((lo + i * step) * 1e9) / 1e9);
  return v;
}

}  // namespace

SnrResult snr(const std::vector<double>& lengths, int beta_true) {
  if (beta_true < 0) throw ParameterError("snr: beta_true must be non-negative");
  SnrResult r;
  if (beta_true == 0) return r;
  std::vector<double> desc = lengths;
  std::sort(desc.begin(), desc.end(), std::greater<>());
  const auto n_signal = std::min<std::size_t>(static_cast<std::size_t>(beta_true), desc.size());
  r.signal_truncated = n_signal < static_cast<std::size_t>(beta_true);
  if (n_signal == 0) return r;
  const auto split = desc.begin() + static_cast<std::ptrdiff_t>(n_signal);
  if (split == desc.end()) {
    r.value = kInf;
    return r;
  }
  const double p_signal = mean_square(desc.begin(), split);
  const double p_noise = mean_square(split, desc.end());
  r.value = p_noise > 0.0 ? p_signal / p_noise : kInf;
  return r;
}

void ClassifierParams::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("classifier: q must lie in (0, 1)");
  if (!(delta >= 0.0)) throw ConfigError("classifier: delta must be non-negative");
  if (!(tau > 0.0)) throw ConfigError("classifier: tau must be positive");
}

int betti_function(const std::vector<double>& lengths, const ClassifierParams& theta) {
  std::vector<double> asc = lengths;
  std::sort(asc.begin(), asc.end());
  return count_above(asc, quantile_sorted(asc, theta.q), theta.delta, theta.tau);
}

double cost(const ClassifierParams& theta, const TrainingSet& ts) {
  if (ts.empty()) throw ParameterError("cost: empty training set");
  return static_cast<double>(error_sum(prepare(ts), theta)) / static_cast<double>(ts.size());
}

double smoothed_cost(const ClassifierParams& theta, const TrainingSet& ts, double alpha) {
  if (ts.empty()) throw ParameterError("smoothed_cost: empty training set");
  return smoothed(prepare(ts), theta, alpha);
}

ParamGrid ParamGrid::defaults() {
  return {range_inclusive(0.05, 0.95, 0.05), range_inclusive(0.0, 2.0, 0.1),
          range_inclusive(1.0, 10.0, 0.1)};
}

TrainResult train(const TrainingSet& ts, const ParamGrid& grid, std::optional<double> smooth_alpha) {
  if (ts.empty()) throw ParameterError("train: empty training set");
  if (grid.q.empty() || grid.delta.empty() || grid.tau.empty()) {
    throw ParameterError("train: empty parameter grid");
  }
  const std::vector<Prepared> items = prepare(ts);
  const std::size_t nq = grid.q.size(), nd = grid.delta.size(), nt = grid.tau.size();
  const std::size_t cells = nq * nd * nt;
  std::vector<long> errors(cells, 0);

  const auto cells_signed = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < cells_signed; ++c) {
    const auto u = static_cast<std::size_t>(c);
    const ClassifierParams th{grid.q[u / (nd * nt)], grid.delta[(u / nt) % nd], grid.tau[u % nt]};
    errors[u] = error_sum(items, th);
  }

  // Serial reduction: the winner does not depend on evaluation order.
  std::size_t best = 0;
  auto params_of = [&](std::size_t u) {
    return ClassifierParams{grid.q[u / (nd * nt)], grid.delta[(u / nt) % nd], grid.tau[u % nt]};
  };
  for (std::size_t u = 1; u < cells; ++u) {
    if (errors[u] < errors[best] ||
        (errors[u] == errors[best] && preferred(params_of(u), params_of(best)))) {
      best = u;
    }
  }

  TrainResult r;
  r.theta = params_of(best);
  r.grid_cost = static_cast<double>(errors[best]) / static_cast<double>(items.size());
  r.cost = r.grid_cost;
  if (!smooth_alpha) return r;

  const double alpha = *smooth_alpha;
  ClassifierParams th = r.theta;
  double current = smoothed(items, th, alpha);
  // q stays on the grid: letting it drift toward 1 fits the training hole
  // count instead of the gap between signal and noise.
  double h_delta = 0.1, h_tau = 0.1;
  for (int iter = 0; iter < 200 && (h_delta > 1e-3 || h_tau > 1e-3); ++iter) {
    bool improved = false;
    auto try_move = [&](double ClassifierParams::*field, double step, double lo, double hi) {
      for (double sgn : {1.0, -1.0}) {
        ClassifierParams cand = th;
        cand.*field = std::clamp(th.*field + sgn * step, lo, hi);
        if (cand == th) continue;
        const double c = smoothed(items, cand, alpha);
        if (c < current) {
          th = cand;
          current = c;
          improved = true;
          return;
        }
      }
    };
    try_move(&ClassifierParams::delta, h_delta, 0.0, 1e9);
    try_move(&ClassifierParams::tau, h_tau, 1e-6, 1e9);
    if (!improved) {
      h_delta *= 0.5;
      h_tau *= 0.5;
    }
  }
  const double refined_cost =
      static_cast<double>(error_sum(items, th)) / static_cast<double>(items.size());
  if (refined_cost <= r.grid_cost && !(th == r.theta)) {
    r.theta = th;
    r.cost = refined_cost;
    r.refined = true;
  }
  return r;
}

int classify(const PersistenceDiagram& dgm, int dim, const ClassifierParams& theta,
             double eps_max) {
  return betti_function(interval_lengths(dgm, dim, eps_max), theta);
}

double sensitivity(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) throw ParameterError("sensitivity: length mismatch");
  if (truth.empty()) throw ParameterError("sensitivity: empty input");
  long tp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    tp += std::min(predicted[i], truth[i]);
    fn += std::max(truth[i] - predicted[i], 0);
  }
  if (tp + fn == 0) return 1.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

void jacobi_eigen(std::vector<double> a, std::size_t n, std::vector<double>& values,
                  std::vector<double>& vectors) {
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto A = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  double scale = 0.0;
  for (double x : a) scale = std::max(scale, std::abs(x));
  const double tol = 1e-15 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(A(p, q)));
    }
    if (off <= tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (std::abs(apq) <= tol) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return A(x, x) > A(y, y); });
  values.assign(n, 0.0);
  vectors.assign(n * n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    values[c] = A(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) vectors[r * n + c] = v[r * n + order[c]];
  }
}

Embedding mds_embed(const DistanceMatrix& d, int out_dim) {
  if (out_dim != 2 && out_dim != 3) throw ParameterError("mds_embed: out_dim must be 2 or 3");
  if (!d.all_finite()) throw ParameterError("mds_embed: distances must be finite");
  const std::size_t n = d.size();
  Embedding e;
  e.dim = out_dim;
  e.degenerate = n < static_cast<std::size_t>(out_dim) + 1;
  e.coords.assign(n, std::vector<double>(static_cast<std::size_t>(out_dim), 0.0));
  if (n == 0) return e;

  std::vector<double> b(n * n);
  std::vector<double> row_mean(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double sq = d(i, j) * d(i, j);
      b[i * n + j] = sq;
      row_mean[i] += sq;
    }
    total += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  total /= static_cast<double>(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      b[i * n + j] = -0.5 * (b[i * n + j] - row_mean[i] - row_mean[j] + total);
    }
  }

  std::vector<double> values, vectors;
  jacobi_eigen(std::move(b), n, values, vectors);
  const std::size_t axes = std::min<std::size_t>(static_cast<std::size_t>(out_dim), n);
  for (std::size_t c = 0; c < axes; ++c) {
    const double lambda = std::max(values[c], 0.0);
    const double s = std::sqrt(lambda);
    double sign = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(vectors[r * n + c]) > 1e-12) {
        sign = vectors[r * n + c] > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) e.coords[r][c] = sign * s * vectors[r * n + c];
  }
  return e;
}

double dominant_gap_ratio(const std::vector<double>& lengths_desc) {
  if (lengths_desc.empty()) return 0.0;
  if (lengths_desc.size() == 1) return kInf;
  return lengths_desc[1] > 0.0 ? lengths_desc[0] / lengths_desc[1] : kInf;
}

}  // namespace encmap
