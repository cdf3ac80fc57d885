#include <functional>
#include <fstream>

#include "doctest.h"
#include "encmap/error.hpp"
#include "encmap/io.hpp"
#include "helpers.hpp"

using namespace encmap;
namespace fs = std::filesystem;

namespace {

void put(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::size_t parse_error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("value formatting") {
    CHECK(io::format_time(1.25) == "1.250000");
    CHECK(io::format_value(kInf) == "inf");
    CHECK(io::format_value(0.1) == "0.1");
    CHECK(io::parse_value("inf", "x", 1) == kInf);
    CHECK(io::parse_value("2.5", "x", 1) == 2.5);
    CHECK_THROWS_AS(io::parse_value("2.5z", "x", 1), ParseError);
  }

  TEST_CASE("round trips") {
    const fs::path dir = testutil::temp_dir("io_roundtrip");
    Rng rng(51);

    const std::vector<EncounterEvent> ev{{0.05, 1, 4}, {0.1, 0, 2}, {2.35, 3, 4}};
    io::write_events(dir / "events.csv", ev);
    CHECK(io::read_events(dir / "events.csv") == ev);

    DistanceMatrix d = testutil::random_matrix(6, rng);
    d.set(0, 5, kInf);
    io::write_distances(dir / "dist.csv", d);
    CHECK(io::read_distances(dir / "dist.csv") == d);

    io::write_landmarks(dir / "lm.csv", {4, 0, 9});
    CHECK(io::read_landmarks(dir / "lm.csv") == IndexList{4, 0, 9});

    PersistenceDiagram dgm;
    dgm.points = {{0, 0, 1.5}, {0, 0, kInf}, {1, 1, 2.25}};
    io::write_diagram(dir / "dgm.csv", dgm);
    CHECK(io::read_diagram(dir / "dgm.csv").points == dgm.points);

    Embedding e;
    e.dim = 3;
    e.coords = {{0.5, -1, 2}, {1, 1, 1}};
    io::write_embedding(dir / "emb.csv", e);
    const Embedding e2 = io::read_embedding(dir / "emb.csv");
    CHECK(e2.dim == 3);
    CHECK(e2.coords == e.coords);

    io::write_classifier(dir / "cls.csv", {{0.5, 0.7, 3.7}, 0.03});
    const auto c = io::read_classifier(dir / "cls.csv");
    CHECK(c.theta == ClassifierParams{0.5, 0.7, 3.7});
    CHECK(c.cost == 0.03);

    const std::vector<io::SnrRecord> snr{{0, "maxmin", 12.5}, {1, "knn-maxmin", kInf}};
    io::write_snr(dir / "snr.csv", snr);
    const auto s2 = io::read_snr(dir / "snr.csv");
    REQUIRE(s2.size() == 2);
    CHECK(s2[1].method == "knn-maxmin");
    CHECK(s2[1].snr == kInf);

    StatusLog st{{0.0, 0, Mode::kRandomWalk}, {0.0, 1, Mode::kRandomWalk}, {1.5, 1, Mode::kStop}};
    io::write_status(dir / "status.csv", st);
    CHECK(io::read_status(dir / "status.csv") == st);

    const Environment env({0, 0, 10, 10}, {{3, 3, 7, 7}});
    SimConfig cfg;
    cfg.n_agents = 5;
    cfg.t_f = 1.0;
    const Trajectory tr = simulate(cfg, MobilityParams{}, env, 0.3).trajectory;
    io::write_trajectory(dir / "traj.csv", tr);
    const Trajectory tr2 = io::read_trajectory(dir / "traj.csv");
    CHECK(tr2.n_agents == 5);
    CHECK(tr2.n_frames() == tr.n_frames());
    for (std::size_t i = 0; i < tr.positions.size(); ++i) {
      CHECK(std::abs(tr2.positions[i].x - tr.positions[i].x) < 1e-8);
    }
  }

  TEST_CASE("malformed input reports the offending line") {
    const fs::path dir = testutil::temp_dir("io_bad");
    put(dir / "a.csv", "t,id_a,id_b\n0.1,0,1\n0.2,x,3\n");
    CHECK(parse_error_line([&] { io::read_events(dir / "a.csv"); }) == 3);
    put(dir / "b.csv", "t,id_a,id_b\n0.1,0\n");
    CHECK(parse_error_line([&] { io::read_events(dir / "b.csv"); }) == 2);
    put(dir / "c.csv", "wrong,header\n");
    CHECK(parse_error_line([&] { io::read_events(dir / "c.csv"); }) == 1);
    put(dir / "d.csv", "2\n0,1\n2,0\n");
    CHECK(parse_error_line([&] { io::read_distances(dir / "d.csv"); }) == 3);
    put(dir / "e.csv", "2\n0,-1\n-1,0\n");
    CHECK(parse_error_line([&] { io::read_distances(dir / "e.csv"); }) == 2);
    put(dir / "f.csv", "dim,birth,death\n2,0,1\n");
    CHECK(parse_error_line([&] { io::read_diagram(dir / "f.csv"); }) == 2);
    CHECK_THROWS_AS(io::read_events(dir / "missing.csv"), IoError);
  }

  TEST_CASE("write_text is atomic and creates parent directories") {
    const fs::path dir = testutil::temp_dir("io_text");
    io::write_text(dir / "a" / "b" / "x.txt", "hello");
    CHECK(io::read_text(dir / "a" / "b" / "x.txt") == "hello");
    CHECK_FALSE(fs::exists(dir / "a" / "b" / "x.txt.tmp"));
  }
}
