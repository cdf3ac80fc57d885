#include <algorithm>

#include "doctest.h"
#include "encmap/error.hpp"
#include "encmap/reference.hpp"
#include "encmap/subsample.hpp"
#include "helpers.hpp"

using namespace encmap;

namespace {

DistanceMatrix collinear(std::initializer_list<double> xs) {
  const std::vector<double> v(xs);
  DistanceMatrix d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) d.set(i, j, std::abs(v[i] - v[j]));
  }
  return d;
}

// Seed whose first draw over n picks `want`.
std::uint64_t seed_picking(std::size_t want, std::size_t n) {
  for (std::uint64_t s = 0;; ++s) {
    Rng r(s);
    if (r.index(n) == want) return s;
  }
}

}  // namespace

TEST_SUITE("subsample") {
  TEST_CASE("knn statistics on a line with an outlier") {
    const KnnStats st = knn_stats(collinear({0, 1, 2, 100}), 1);
    CHECK(st.d_bar_k == std::vector<double>{1, 1, 1, 98});
    CHECK(st.d_k == std::vector<double>{1, 1, 1, 98});
    for (std::size_t i = 0; i < 4; ++i) CHECK(st.rho_k[i] == 1.0 / (st.d_bar_k[i] + st.delta));

    DistanceMatrix eq(5);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) eq.set(i, j, 2.5);
    }
    for (double v : knn_stats(eq, 3).d_bar_k) CHECK(v == 2.5);

    const KnnStats dup = knn_stats(collinear({0, 0, 5}), 1);
    CHECK(dup.d_bar_k[0] == 0.0);
    CHECK(std::isfinite(dup.rho_k[0]));

    CHECK_THROWS_AS(knn_stats(collinear({0, 1}), 2), ParameterError);
    DistanceMatrix inf(3, kInf);
    CHECK_THROWS_AS(knn_stats(inf, 1), ParameterError);
  }

  TEST_CASE("knn filter") {
    CHECK(knn_filter(collinear({0, 1, 2, 100}), 1, 0.75) == IndexList{0, 1, 2});
    CHECK(knn_filter(collinear({0, 1, 2, 100}), 1, 1.0) == IndexList{0, 1, 2, 3});
    DistanceMatrix eq(4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) eq.set(i, j, 1.0);
    }
    CHECK(knn_filter(eq, 2, 0.3).size() == 4);
  }

  TEST_CASE("maxmin") {
    const DistanceMatrix d = collinear({0, 1, 10});
    CHECK(maxmin(d, 2, seed_picking(0, 3)) == IndexList{0, 2});
    IndexList all = maxmin(d, 3, 5);
    std::sort(all.begin(), all.end());
    CHECK(all == IndexList{0, 1, 2});
    const std::uint64_t s = 77;
    Rng r(s);
    CHECK(maxmin(d, 1, s) == IndexList{static_cast<std::size_t>(r.index(3))});
    CHECK_THROWS_AS(maxmin(d, 4, 1), ParameterError);
    CHECK_THROWS_AS(maxmin(d, 0, 1), ParameterError);
  }

  TEST_CASE("prob-maxmin") {
    const DistanceMatrix d = testutil::circle(30);
    for (std::uint64_t s = 0; s < 10; ++s) {
      CHECK(prob_maxmin(d, 10, 3, 0.0, s) == maxmin(d, 10, s));
      Rng r(s);
      CHECK(prob_maxmin(d, 1, 3, 1e6, s) == IndexList{static_cast<std::size_t>(r.index(30))});
    }
    CHECK_THROWS_AS(prob_maxmin(d, 31, 3, 1.0, 1), ParameterError);
  }

  TEST_CASE("prob-maxmin delays a sparse outlier") {
    // Ten clustered points plus one far away; start from the cluster.
    std::vector<Vec2> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({0.1 * (i % 4), 0.1 * (i / 4)});
    pts.push_back({5.0, 5.0});
    const DistanceMatrix d = testutil::from_points(pts);
    const std::uint64_t s = seed_picking(0, 11);
    const IndexList mm = maxmin(d, 11, s);
    const IndexList pm = prob_maxmin(d, 11, 2, 1000.0, s);
    const auto rank = [](const IndexList& l) { return std::find(l.begin(), l.end(), 10) - l.begin(); };
    CHECK(rank(mm) == 1);
    CHECK(rank(pm) > rank(mm));
  }

  TEST_CASE("restrict") {
    Rng rng(4);
    const DistanceMatrix d = testutil::random_matrix(8, rng);
    IndexList all(8);
    std::iota(all.begin(), all.end(), std::size_t{0});
    CHECK(restrict(d, all) == d);
    CHECK(restrict(d, {3}) == DistanceMatrix(1));
    const DistanceMatrix r = restrict(d, {2, 5, 7});
    const IndexList idx{2, 5, 7};
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) CHECK(r(a, b) == d(idx[a], idx[b]));
    }
    CHECK_THROWS_AS(restrict(d, {1, 1}), ParameterError);
    CHECK_THROWS_AS(restrict(d, {8}), ParameterError);
  }

  TEST_CASE("parallel selectors match the serial references") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 30 + rng.index(200);
      const DistanceMatrix d = trial % 2 ? testutil::random_matrix(n, rng, 6) : testutil::random_planar(n, rng);
      const std::size_t m = 1 + rng.index(n);
      CHECK(maxmin(d, m, trial) == reference::maxmin(d, m, trial));
      const std::size_t k = 1 + rng.index(10);
      const KnnStats a = knn_stats(d, k), b = reference::knn_stats(d, k);
      CHECK(a.d_k == b.d_k);
      CHECK(a.d_bar_k == b.d_bar_k);
      CHECK(a.rho_k == b.rho_k);
    }
  }

  TEST_CASE("property: maxmin covering radius") {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
      const DistanceMatrix d = testutil::random_planar(120, rng);
      const std::size_t m = 2 + rng.index(40);
      const IndexList l = maxmin(d, m, trial);
      // Selection value of the last landmark: its distance to the others.
      double last = kInf;
      for (std::size_t i = 0; i + 1 < l.size(); ++i) last = std::min(last, d(l.back(), l[i]));
      for (std::size_t p = 0; p < d.size(); ++p) {
        double u = kInf;
        for (std::size_t i : l) u = std::min(u, d(p, i));
        CHECK(u <= last);
      }
    }
  }

  TEST_CASE("property: knn filter grows with q") {
    Rng rng(7);
    const DistanceMatrix d = testutil::random_planar(100, rng);
    IndexList prev;
    for (double q = 0.05; q <= 1.0; q += 0.05) {
      const IndexList v = knn_filter(d, 5, q);
      CHECK(std::includes(v.begin(), v.end(), prev.begin(), prev.end()));
      prev = v;
    }
  }

  TEST_CASE("select_landmarks dispatch") {
    Rng rng(8);
    const DistanceMatrix d = testutil::random_planar(200, rng);
    SubsampleParams p;
    p.m = 40;
    for (SubsampleMethod m :
         {SubsampleMethod::kMaxmin, SubsampleMethod::kKnnMaxmin, SubsampleMethod::kProbMaxmin}) {
      p.method = m;
      const IndexList a = select_landmarks(d, p);
      CHECK(a.size() == 40);
      CHECK(a == select_landmarks(d, p));
      IndexList s = a;
      std::sort(s.begin(), s.end());
      CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    }
    p.method = SubsampleMethod::kKnnMaxmin;
    const IndexList v = knn_filter(d, p.k, p.q);
    for (std::size_t i : select_landmarks(d, p)) CHECK(std::binary_search(v.begin(), v.end(), i));
    CHECK(parse_subsample_method("prob-maxmin") == SubsampleMethod::kProbMaxmin);
    CHECK_THROWS_AS(parse_subsample_method("random"), ConfigError);
    CHECK(select_landmarks(DistanceMatrix(1), p) == IndexList{0});
  }
}
