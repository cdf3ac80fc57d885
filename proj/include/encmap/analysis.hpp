#pragma once

#include <optional>
#include <vector>

#include "encmap/homology.hpp"
#include "encmap/metric.hpp"

namespace encmap {

struct SnrResult {
  double value = 0.0;          // +inf when the noise set is empty
  bool signal_truncated = false;  // fewer lengths than beta_true
};

// Signal = the beta_true longest intervals, noise = the rest; ratio of mean
// squared lengths. beta_true = 0 gives 0. Lengths in any order.
SnrResult snr(const std::vector<double>& lengths, int beta_true);

struct ClassifierParams {
  double q = 0.5;      // quantile of the interval lengths used as scale
  double delta = 0.7;  // offset added to the quantile, in filtration units
  double tau = 3.7;    // threshold on normalised lengths

  void validate() const;  // throws ConfigError
  bool operator==(const ClassifierParams&) const = default;
};

// Number of lengths l with l / (l_q + delta) > tau, where l_q is the
// nearest-rank q-quantile of the lengths. Throws SingularityError when
// l_q + delta == 0 on a non-empty input.
int betti_function(const std::vector<double>& lengths, const ClassifierParams& theta);

struct TrainingItem {
  std::vector<double> lengths;
  int true_betti = 0;
};
using TrainingSet = std::vector<TrainingItem>;

// Mean absolute error of betti_function over the set.
double cost(const ClassifierParams& theta, const TrainingSet& ts);

struct ParamGrid {
  std::vector<double> q;
  std::vector<double> delta;
  std::vector<double> tau;

  // q in {0.05..0.95}, delta in {0..2.0}, tau in {1.0..10.0}.
  static ParamGrid defaults();
};

struct TrainResult {
  ClassifierParams theta;
  double cost = 0.0;       // exact indicator cost at theta
  double grid_cost = 0.0;  // best cost on the grid
  bool refined = false;    // theta moved off the grid
};

// Exhaustive grid search (ties: q closest to 0.5, smaller tau, smaller delta,
// smaller q). With smooth_alpha set, a coordinate descent over (delta, tau) on
// the sigmoid-smoothed cost starts from the grid optimum; the move is kept
// only if it does not raise the exact cost.
TrainResult train(const TrainingSet& ts, const ParamGrid& grid,
                  std::optional<double> smooth_alpha = std::nullopt);

// Smoothed cost: the indicator replaced by 1 / (1 + exp(-alpha (x - tau))).
double smoothed_cost(const ClassifierParams& theta, const TrainingSet& ts, double alpha);

int classify(const PersistenceDiagram& dgm, int dim, const ClassifierParams& theta,
             double eps_max);

// Feature-level sensitivity TP / (TP + FN) with TP = sum min(pred, truth) and
// FN = sum max(truth - pred, 0); 1 when there are no true features.
double sensitivity(const std::vector<int>& predicted, const std::vector<int>& truth);

struct Embedding {
  int dim = 2;
  std::vector<std::vector<double>> coords;  // one row per point, `dim` columns
  bool degenerate = false;                  // fewer than dim + 1 points
};

// Classical MDS by cyclic Jacobi on the double-centred squared distances.
// Negative eigenvalues are clamped to 0 and each axis is oriented so its
// first non-zero coordinate is positive.
Embedding mds_embed(const DistanceMatrix& d, int out_dim);

// Symmetric eigen-decomposition by cyclic Jacobi rotations; eigenvalues in
// descending order, eigenvectors as columns of `vectors` (row-major n x n).
void jacobi_eigen(std::vector<double> a, std::size_t n, std::vector<double>& values,
                  std::vector<double>& vectors);

// longest / second-longest length; +inf with a single length, 0 with none.
double dominant_gap_ratio(const std::vector<double>& lengths_desc);

}  // namespace encmap
