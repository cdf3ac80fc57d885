#include <fstream>
#include <sstream>

#include "doctest.h"
#include "encmap/error.hpp"
#include "encmap/io.hpp"
#include "encmap/pipeline.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace encmap;
namespace fs = std::filesystem;

namespace {

Scenario small() {
  Scenario s = parse_scenario("simulation: {n_agents: 80, t_f_s: 10}\nsubsample: {n_landmarks: 60}\n");
  return s;
}

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("in-memory stages are deterministic and consistent") {
    const Scenario s = small();
    const PipelineResult a = run_stages(s);
    const PipelineResult b = run_stages(s);
    CHECK(a.cloud.events == b.cloud.events);
    CHECK(a.topo.dgm.points == b.topo.dgm.points);
    CHECK(a.topo.landmarks.size() <= 60);
    CHECK(a.betti_true == std::pair{1, 1});
    CHECK(a.cloud.cloud.all_finite());
    CHECK(a.landmark_events.size() == a.topo.landmarks.size());
    for (std::size_t i = 0; i < a.landmark_events.size(); ++i) {
      CHECK(a.landmark_events[i] == a.cloud.component[a.topo.landmarks[i]]);
    }
  }

  TEST_CASE("artifacts are written and re-read") {
    const fs::path dir = testutil::temp_dir("pipeline_out");
    const Scenario s = small();
    const PipelineResult r = run_pipeline(s, dir);
    for (const char* f : {"status.csv", "events.csv", "dist.csv", "landmarks.csv", "dgm.csv",
                          "embedding.csv", "summary.json"}) {
      CHECK(fs::exists(dir / f));
    }
    CHECK(io::read_events(dir / "events.csv") == r.cloud.events);
    CHECK(io::read_diagram(dir / "dgm.csv").points == r.topo.dgm.points);
    const auto j = nlohmann::json::parse(io::read_text(dir / "summary.json"));
    CHECK(j.contains("betti_hat"));
    CHECK_FALSE(j.contains("timings"));
  }

  TEST_CASE("configuration errors surface as ConfigError") {
    Scenario s = small();
    s.sim.n_agents = 0;
    CHECK_THROWS_AS(run_stages(s), ConfigError);
  }

  TEST_CASE("batch with a single run") {
    const fs::path dir = testutil::temp_dir("pipeline_batch");
    Scenario s = small();
    s.batch.n_runs = 1;
    std::ostringstream log;
    const BatchResult r = run_batch(s, dir, &log);
    CHECK(r.runs.size() == 1);
    CHECK(r.failed == 0);
    CHECK(r.methods.size() == 3);
    CHECK(fs::exists(dir / "snr.csv"));
    CHECK(fs::exists(dir / "batch_summary.json"));
    CHECK(io::read_snr(dir / "snr.csv").size() == 3);
  }
}
