#include "doctest.h"
#include "encmap/error.hpp"
#include "encmap/io.hpp"
#include "encmap/plot.hpp"
#include "helpers.hpp"

using namespace encmap;
namespace fs = std::filesystem;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("plot") {
  TEST_CASE("one dim-1 point gives one dim-1 marker") {
    PersistenceDiagram d;
    d.points = {{0, 0, 1}, {0, 0, kInf}, {1, 1.0, 1.5}};
    const std::string svg = diagram_svg(d);
    CHECK(count(svg, "<svg") == 1);
    CHECK(count(svg, "class=\"dim1\"") == 1);
    CHECK(count(svg, "class=\"dim0\"") == 2);
    CHECK(count(svg, "</svg>") == 1);
  }

  TEST_CASE("empty diagram has no markers") {
    const std::string svg = diagram_svg(PersistenceDiagram{});
    CHECK(count(svg, "class=\"dim1\"") == 0);
    CHECK(count(svg, "class=\"dim0\"") == 0);
  }

  TEST_CASE("embedding and snr plots from files") {
    const fs::path dir = testutil::temp_dir("plot");
    Embedding e;
    e.dim = 3;
    for (int i = 0; i < 17; ++i) e.coords.push_back({0.1 * i, std::sin(i), std::cos(i)});
    io::write_embedding(dir / "emb.csv", e);
    plot(dir / "emb.csv", PlotKind::kEmbedding, dir / "emb.svg");
    CHECK(count(io::read_text(dir / "emb.svg"), "class=\"point\"") == 17);

    io::write_snr(dir / "snr.csv", {{0, "maxmin", 3}, {1, "maxmin", 5}, {0, "knn-maxmin", kInf}});
    plot(dir / "snr.csv", PlotKind::kSnr, dir / "snr.svg");
    CHECK(count(io::read_text(dir / "snr.svg"), "class=\"bar\"") == 2);

    CHECK(parse_plot_kind("diagram") == PlotKind::kDiagram);
    CHECK_THROWS_AS(parse_plot_kind("pie"), ConfigError);
  }
}
