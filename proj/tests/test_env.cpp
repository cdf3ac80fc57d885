#include "doctest.h"
#include "encmap/env.hpp"
#include "encmap/error.hpp"
#include "encmap/rng.hpp"

using namespace encmap;

TEST_SUITE("env") {
  TEST_CASE("contains: closed outer rectangle minus open holes") {
    const Environment unit({0, 0, 1, 1});
    CHECK(unit.contains({0.5, 0.5}));
    CHECK_FALSE(unit.contains({1.5, 0.5}));
    CHECK(unit.contains({1.0, 0.3}));  // on the wall

    const Environment one({0, 0, 10, 10}, {{4, 4, 6, 6}});
    CHECK_FALSE(one.contains({5, 5}));
    CHECK(one.contains({4, 5}));  // hole boundary belongs to free space
  }

  TEST_CASE("distance_to_boundary") {
    const Environment empty({0, 0, 10, 10});
    CHECK(empty.distance_to_boundary({5, 5}) == 5.0);
    const Environment one({0, 0, 10, 10}, {{4, 4, 6, 6}});
    CHECK(one.distance_to_boundary({3, 5}) == 1.0);
    CHECK(one.distance_to_boundary({0, 7}) == 0.0);
    CHECK(one.distance_to_boundary({6, 5}) == 0.0);
    // Diagonal from a hole corner.
    CHECK(one.distance_to_boundary({3, 3}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(one.distance_to_boundary({5, 5}), DomainError);
    CHECK_THROWS_AS(one.distance_to_boundary({-1, 5}), DomainError);
  }

  TEST_CASE("betti_ground_truth") {
    CHECK(betti_ground_truth(Environment({0, 0, 10, 10})) == std::pair{1, 0});
    CHECK(betti_ground_truth(Environment({0, 0, 10, 10}, {{4, 4, 6, 6}})) == std::pair{1, 1});
    CHECK(betti_ground_truth(Environment({0, 0, 10, 10}, {{1, 1, 3, 3}, {6, 6, 8, 8}})) ==
          std::pair{1, 2});
  }

  TEST_CASE("construction rejects holes touching walls or each other") {
    CHECK_THROWS_AS(Environment({0, 0, 10, 10}, {{0, 4, 2, 6}}), ConfigError);
    CHECK_THROWS_AS(Environment({0, 0, 10, 10}, {{2, 2, 5, 5}, {5, 2, 7, 4}}), ConfigError);
    CHECK_THROWS_AS(Environment({0, 0, 10, 10}, {{8, 8, 11, 9}}), ConfigError);
  }

  TEST_CASE("min_clearance and free_area") {
    const Environment one({0, 0, 10, 10}, {{3, 3, 7, 7}});
    CHECK(one.min_clearance() == 3.0);
    CHECK(one.free_area() == 84.0);
    CHECK(Environment({0, 0, 10, 6}).min_clearance() == 3.0);
  }

  TEST_CASE("property: contains and positive wall distance agree with strict interior") {
    const Environment env({0, 0, 10, 10}, {{2, 2, 4, 5}, {6, 6, 8, 8}});
    Rng rng(3);
    for (int i = 0; i < 20000; ++i) {
      // Coarse grid so a fair share of samples lands exactly on walls.
      const Vec2 p{0.25 * static_cast<double>(rng.index(41)) - 0.0,
                   0.25 * static_cast<double>(rng.index(41))};
      bool strict = p.x > 0 && p.x < 10 && p.y > 0 && p.y < 10;
      for (const Rect& h : env.holes()) strict = strict && !h.contains_closed(p);
      const bool lhs = env.contains(p) && env.distance_to_boundary(p) > 0.0;
      CHECK(lhs == strict);
    }
  }

  TEST_CASE("random_environment honours the clearance") {
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
      const Environment e = random_environment({0, 0, 14, 14}, 3, 2.0, 1.5, rng);
      CHECK(e.holes().size() == 3);
      CHECK(e.min_clearance() >= 1.5);
      CHECK(betti_ground_truth(e) == std::pair{1, 3});
    }
    Rng r2(1);
    CHECK_THROWS_AS(random_environment({0, 0, 5, 5}, 4, 3.0, 1.0, r2), ConfigError);
  }
}
