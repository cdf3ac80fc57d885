#include "encmap/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "encmap/error.hpp"

namespace encmap {
namespace {

constexpr double kW = 480.0;
constexpr double kH = 480.0;
constexpr double kMargin = 56.0;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

// Escapes the few characters that matter inside SVG text.
std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

class Svg {
 public:
  Svg() {
    s_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kW) + "\" height=\"" + px(kH) +
         "\" viewBox=\"0 0 " + px(kW) + " " + px(kH) + "\">\n"
         "<rect x=\"0\" y=\"0\" width=\"" + px(kW) + "\" height=\"" + px(kH) + "\" fill=\"white\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& style) {
    s_ += "<line x1=\"" + px(x1) + "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" + px(y2) +
          "\" " + style + "/>\n";
  }

  void text(double x, double y, std::string_view t, const char* anchor = "middle", int size = 12) {
    s_ += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" font-family=\"sans-serif\" font-size=\"" +
          std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + escape(t) + "</text>\n";
  }

  void raw(const std::string& s) { s_ += s; }

  std::string finish() { return s_ + "</svg>\n"; }

 private:
  std::string s_;
};

// Frame with ticks on [0, hi] for both axes (or x only when y_hi <= 0).
void axes(Svg& svg, double x_hi, double y_hi, std::string_view xlabel, std::string_view ylabel) {
  const double x0 = kMargin, y0 = kH - kMargin, x1 = kW - kMargin / 2, y1 = kMargin / 2;
  const std::string axis = "stroke=\"black\" stroke-width=\"1\"";
  svg.line(x0, y0, x1, y0, axis);
  svg.line(x0, y0, x0, y1, axis);
  for (int k = 0; k <= 4; ++k) {
    const double f = k / 4.0;
    const double x = x0 + f * (x1 - x0);
    svg.line(x, y0, x, y0 + 4, axis);
    if (x_hi > 0) svg.text(x, y0 + 16, fmt("%.3g", f * x_hi), "middle", 10);
    const double y = y0 - f * (y0 - y1);
    svg.line(x0 - 4, y, x0, y, axis);
    if (y_hi > 0) svg.text(x0 - 6, y + 3, fmt("%.3g", f * y_hi), "end", 10);
  }
  svg.text((x0 + x1) / 2, kH - 14, xlabel);
  svg.raw("<text x=\"14\" y=\"" + px((y0 + y1) / 2) +
          "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
          px((y0 + y1) / 2) + ")\">" + escape(ylabel) + "</text>\n");
}

double plot_x(double f) { return kMargin + f * (kW - 1.5 * kMargin); }
double plot_y(double f) { return kH - kMargin - f * (kH - 1.5 * kMargin); }

}  // namespace

PlotKind parse_plot_kind(std::string_view s) {
  if (s == "diagram") return PlotKind::kDiagram;
  if (s == "embedding") return PlotKind::kEmbedding;
  if (s == "snr") return PlotKind::kSnr;
  throw ConfigError("unknown plot kind '" + std::string(s) + "'");
}

std::string diagram_svg(const PersistenceDiagram& dgm) {
  double hi = 0.0;
  for (const PersistencePoint& p : dgm.points) {
    hi = std::max(hi, p.birth);
    if (std::isfinite(p.death)) hi = std::max(hi, p.death);
  }
  if (!(hi > 0.0)) hi = 1.0;
  // Infinite deaths sit on a dashed band just above the finite range.
  const double range = hi * 1.1;
  Svg svg;
  axes(svg, range, range, "birth (s)", "death (s)");
  svg.line(plot_x(0), plot_y(0), plot_x(1), plot_y(1),
           "class=\"diagonal\" stroke=\"gray\" stroke-width=\"1\"");
  const double inf_y = plot_y(hi * 1.05 / range);
  svg.line(plot_x(0), inf_y, plot_x(1), inf_y,
           "stroke=\"gray\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"");
  svg.text(plot_x(0) + 4, inf_y - 4, "inf", "start", 10);
  for (const PersistencePoint& p : dgm.points) {
    const double x = plot_x(p.birth / range);
    const double y = std::isfinite(p.death) ? plot_y(p.death / range) : inf_y;
    if (p.dim == 0) {
      svg.raw("<circle class=\"dim0\" cx=\"" + px(x) + "\" cy=\"" + px(y) +
              "\" r=\"3.5\" fill=\"#1f77b4\" fill-opacity=\"0.7\"/>\n");
    } else {
      svg.raw("<polygon class=\"dim1\" points=\"" + px(x) + "," + px(y - 5) + " " + px(x - 4.5) +
              "," + px(y + 3.5) + " " + px(x + 4.5) + "," + px(y + 3.5) +
              "\" fill=\"#d62728\" fill-opacity=\"0.8\"/>\n");
    }
  }
  svg.raw("<circle cx=\"" + px(kW - 120) + "\" cy=\"40\" r=\"3.5\" fill=\"#1f77b4\"/>\n");
  svg.text(kW - 112, 44, "dim 0", "start", 11);
  svg.raw("<polygon points=\"" + px(kW - 120) + ",53 " + px(kW - 124.5) + ",61.5 " +
          px(kW - 115.5) + ",61.5\" fill=\"#d62728\"/>\n");
  svg.text(kW - 112, 62, "dim 1", "start", 11);
  return svg.finish();
}

std::string embedding_svg(const Embedding& e) {
  // Oblique projection for 3-D coordinates.
  std::vector<std::pair<double, double>> pts;
  for (const std::vector<double>& c : e.coords) {
    double x = c.size() > 0 ? c[0] : 0.0;
    double y = c.size() > 1 ? c[1] : 0.0;
    if (c.size() > 2) {
      x += 0.5 * c[2];
      y += 0.35 * c[2];
    }
    pts.emplace_back(x, y);
  }
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  if (!pts.empty()) {
    lo_x = hi_x = pts[0].first;
    lo_y = hi_y = pts[0].second;
  }
  for (const auto& [x, y] : pts) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  }
  double span = std::max(hi_x - lo_x, hi_y - lo_y);
  if (!(span > 0.0)) span = 1.0;
  const double cx = (lo_x + hi_x) / 2, cy = (lo_y + hi_y) / 2;
  Svg svg;
  axes(svg, 0.0, 0.0, e.dim == 3 ? "MDS axes 1-3 (oblique)" : "MDS axis 1", "MDS axis 2");
  for (const auto& [x, y] : pts) {
    const double fx = 0.5 + 0.92 * (x - cx) / span;
    const double fy = 0.5 + 0.92 * (y - cy) / span;
    svg.raw("<circle class=\"point\" cx=\"" + px(plot_x(fx)) + "\" cy=\"" + px(plot_y(fy)) +
            "\" r=\"2.5\" fill=\"#2ca02c\" fill-opacity=\"0.75\"/>\n");
  }
  return svg.finish();
}

std::string snr_svg(const std::vector<io::SnrRecord>& rows) {
  struct Agg {
    double sum = 0.0;
    int finite = 0;
    int infinite = 0;
  };
  std::vector<std::string> order;
  std::map<std::string, Agg> by;
  for (const io::SnrRecord& r : rows) {
    if (!by.count(r.method)) order.push_back(r.method);
    Agg& a = by[r.method];
    if (std::isinf(r.snr)) {
      ++a.infinite;
    } else {
      a.sum += r.snr;
      ++a.finite;
    }
  }
  double hi = 0.0;
  for (const auto& [m, a] : by) {
    if (a.finite) hi = std::max(hi, a.sum / a.finite);
  }
  if (!(hi > 0.0)) hi = 1.0;
  hi *= 1.15;
  Svg svg;
  axes(svg, 0.0, hi, "subsampling method", "mean SNR (finite runs)");
  const double n = static_cast<double>(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Agg& a = by[order[k]];
    const double mean = a.finite ? a.sum / a.finite : 0.0;
    const double left = plot_x((k + 0.2) / n), right = plot_x((k + 0.8) / n);
    const double top = plot_y(mean / hi);
    svg.raw("<rect class=\"bar\" x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" +
            px(right - left) + "\" height=\"" + px(plot_y(0) - top) +
            "\" fill=\"#9467bd\" fill-opacity=\"0.8\"/>\n");
    svg.text((left + right) / 2, plot_y(0) + 30, order[k], "middle", 11);
    svg.text((left + right) / 2, top - 6, fmt("%.3g", mean), "middle", 10);
    if (a.infinite) {
      svg.text((left + right) / 2, top - 18, std::to_string(a.infinite) + " inf", "middle", 10);
    }
  }
  return svg.finish();
}

void plot(const std::filesystem::path& artifact, PlotKind kind, const std::filesystem::path& out) {
  std::string svg;
  switch (kind) {
    case PlotKind::kDiagram: svg = diagram_svg(io::read_diagram(artifact)); break;
    case PlotKind::kEmbedding: svg = embedding_svg(io::read_embedding(artifact)); break;
    case PlotKind::kSnr: svg = snr_svg(io::read_snr(artifact)); break;
  }
  io::write_text(out, svg);
}

}  // namespace encmap
