#include "doctest.h"
#include "encmap/error.hpp"
#include "encmap/scenario.hpp"

using namespace encmap;

TEST_SUITE("scenario") {
  TEST_CASE("empty document gives the defaults") {
    const Scenario s = parse_scenario("{}");
    CHECK(s.sim.n_agents == 200);
    CHECK(s.env.holes().size() == 1);
    CHECK(s.metric_mode == MetricMode::kContracted);
    CHECK(s.subsample.m == 150);
    CHECK(s.classifier == ClassifierParams{0.5, 0.7, 3.7});
  }

  TEST_CASE("keys are read with their units") {
    const Scenario s = parse_scenario(R"(
environment:
  outer_m: [0, 0, 14, 14]
  holes_m: [[2, 2, 5, 5], [8, 8, 12, 12]]
sensing:
  r_d_m: 0.25
simulation:
  n_agents: 50
  t_f_s: 7.5
  seed: 9
metric:
  mode: hybrid
subsample:
  method: prob-maxmin
  omega: 0.2
homology:
  eps_max_s: 4
batch:
  mode: train
  methods: [maxmin]
  layout: {n_holes: 2, hole_side_m: 3}
)");
    CHECK(s.env.holes().size() == 2);
    CHECK(s.r_d == 0.25);
    CHECK(s.sim.n_agents == 50);
    CHECK(s.sim.t_f == 7.5);
    CHECK(s.metric_mode == MetricMode::kHybrid);
    CHECK(s.subsample.method == SubsampleMethod::kProbMaxmin);
    CHECK(s.subsample.omega == 0.2);
    CHECK(s.eps_max == 4.0);
    CHECK(s.batch.mode == BatchMode::kTrain);
    REQUIRE(s.batch.layout.has_value());
    CHECK(s.batch.layout->n_holes == 2);
  }

  TEST_CASE("dump and parse round trip") {
    Scenario s = parse_scenario("simulation: {n_agents: 77, dt_s: 0.1}\nsubsample: {q: 0.85}\n");
    s.set_seed(12345);
    const std::string text = dump_scenario(s);
    CHECK(dump_scenario(parse_scenario(text)) == text);
    CHECK(parse_scenario(text).sim.seed == 12345);
    CHECK(parse_scenario(text).subsample.seed == 12345);
  }

  TEST_CASE("bad documents are config errors") {
    CHECK_THROWS_AS(parse_scenario("simulation: {n_agent: 5}"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("foo: 1"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("simulation: {n_agents: many}"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("metric: {mode: fancy}"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("embedding: {dim: 4}"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("sensing: {r_d_m: 0}"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("environment: {holes_m: [[0, 0, 1]]}"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[unclosed"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), IoError);
  }
}
