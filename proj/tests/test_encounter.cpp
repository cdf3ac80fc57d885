#include "doctest.h"
#include "encmap/encounter.hpp"
#include "encmap/error.hpp"
#include "encmap/reference.hpp"

using namespace encmap;

namespace {

// Two agents on the x axis; separation given per frame.
Trajectory pair_trace(const std::vector<double>& gaps, double dt = 0.05) {
  Trajectory t;
  t.n_agents = 2;
  t.dt = dt;
  for (std::size_t f = 0; f < gaps.size(); ++f) {
    t.times.push_back(frame_time(static_cast<int>(f), dt));
    t.positions.push_back({0, 0});
    t.positions.push_back({gaps[f], 0});
  }
  return t;
}

}  // namespace

TEST_SUITE("encounter") {
  TEST_CASE("one event at the first in-range frame of a contact") {
    std::vector<double> gaps(120, 1.0);
    for (int f = 37; f < 87; ++f) gaps[static_cast<std::size_t>(f)] = 0.2;
    const auto ev = detect_events(pair_trace(gaps), 0.3);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].t == frame_time(37, 0.05));
    CHECK(ev[0].id_a == 0);
    CHECK(ev[0].id_b == 1);
  }

  TEST_CASE("pair in range at t = 0 gives an event at 0") {
    const auto ev = detect_events(pair_trace({0.1, 0.1, 0.1}), 0.3);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].t == 0.0);
  }

  TEST_CASE("leaving and re-entering gives two events; the radius is a closed ball") {
    CHECK(detect_events(pair_trace({0.1, 0.5, 0.1}), 0.3).size() == 2);
    CHECK(detect_events(pair_trace({1.0, 0.3, 0.3000001, 0.3}), 0.3).size() == 2);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(detect_events(Trajectory{}, 0.3), ParameterError);
    CHECK_THROWS_AS(detect_events(pair_trace({0.1}), 0.0), ParameterError);
  }

  TEST_CASE("grid detection matches the all-pairs reference on simulated swarms") {
    const Environment env({0, 0, 10, 10}, {{3, 3, 7, 7}});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SimConfig c;
      c.n_agents = 120;
      c.t_f = 10.0;
      c.seed = seed;
      const SimResult r = simulate(c, MobilityParams{}, env, 0.3);
      const auto fast = detect_events(r.trajectory, 0.3);
      const auto slow = reference::detect_events(r.trajectory, 0.3);
      CHECK(fast == slow);
      CHECK(std::is_sorted(fast.begin(), fast.end()));
      for (const EncounterEvent& e : fast) CHECK(e.id_a < e.id_b);
    }
  }

  TEST_CASE("property: agent relabelling within a frame does not change the event set") {
    const Environment env({0, 0, 10, 10});
    SimConfig c;
    c.n_agents = 50;
    c.t_f = 5.0;
    const SimResult r = simulate(c, MobilityParams{}, env, 0.3);
    // Reverse agent order: id k becomes n-1-k.
    Trajectory rev = r.trajectory;
    const int n = rev.n_agents;
    for (int f = 0; f < rev.n_frames(); ++f) {
      for (int a = 0; a < n; ++a) {
        rev.positions[static_cast<std::size_t>(f * n + a)] = r.trajectory.at(f, n - 1 - a);
      }
    }
    auto back = detect_events(rev, 0.3);
    for (EncounterEvent& e : back) {
      const AgentId a = n - 1 - e.id_b, b = n - 1 - e.id_a;
      e.id_a = a;
      e.id_b = b;
    }
    std::sort(back.begin(), back.end());
    CHECK(back == detect_events(r.trajectory, 0.3));
  }
}
