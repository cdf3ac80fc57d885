#include "encmap/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "encmap/error.hpp"

namespace encmap::io {
namespace {

// Line-by-line CSV reader that knows its file name and position.
class CsvReader {
 public:
  explicit CsvReader(const fs::path& p) : name_(p.string()), in_(p) {
    if (!in_) throw IoError("cannot open " + name_);
  }

  bool next(std::vector<std::string_view>& fields) {
    if (!std::getline(in_, buf_)) return false;
    ++line_;
    if (!buf_.empty() && buf_.back() == '\r') buf_.pop_back();
    fields.clear();
    std::string_view rest(buf_);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return true;
  }

  void header(std::string_view expected) {
    std::vector<std::string_view> f;
    if (!next(f) || buf_ != expected) fail("expected header '" + std::string(expected) + "'");
  }

  void expect_fields(const std::vector<std::string_view>& f, std::size_t n) const {
    if (f.size() != n) {
      fail("expected " + std::to_string(n) + " fields, got " + std::to_string(f.size()));
    }
  }

  double value(std::string_view s) const { return parse_value(s, name_, line_); }

  template <typename Int>
  Int integer(std::string_view s) const {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      fail("bad integer '" + std::string(s) + "'");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(name_, line_, what); }

 private:
  std::string name_;
  std::ifstream in_;
  std::string buf_;
  std::size_t line_ = 0;
};

std::string join(std::initializer_list<std::string> parts) {
  std::string s;
  bool first = true;
  for (const std::string& p : parts) {
    if (!first) s += ',';
    s += p;
    first = false;
  }
  return s;
}

}  // namespace

std::string format_time(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

std::string format_value(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double parse_value(std::string_view s, const std::string& file, std::size_t line) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError(file, line, "bad number '" + std::string(s) + "'");
  }
  return v;
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
    if (!out.flush()) throw IoError("write failed for " + p.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_status(const fs::path& p, const StatusLog& log) {
  std::string s = "t,id,mode\n";
  for (const StatusRecord& r : log) {
    s += join({format_time(r.t), std::to_string(r.id), std::string(mode_name(r.mode))}) + '\n';
  }
  write_text(p, s);
}

StatusLog read_status(const fs::path& p) {
  CsvReader r(p);
  r.header("t,id,mode");
  StatusLog log;
  std::vector<std::string_view> f;
  while (r.next(f)) {
    r.expect_fields(f, 3);
    StatusRecord rec;
    rec.t = r.value(f[0]);
    rec.id = r.integer<AgentId>(f[1]);
    try {
      rec.mode = parse_mode(f[2]);
    } catch (const ParameterError&) {
      r.fail("bad mode '" + std::string(f[2]) + "'");
    }
    log.push_back(rec);
  }
  return log;
}

void write_trajectory(const fs::path& p, const Trajectory& traj) {
  std::string s = "t,id,x,y\n";
  for (int f = 0; f < traj.n_frames(); ++f) {
    const std::string t = format_time(traj.times[static_cast<std::size_t>(f)]);
    for (AgentId a = 0; a < traj.n_agents; ++a) {
      const Vec2 v = traj.at(f, a);
      s += join({t, std::to_string(a), format_value(v.x), format_value(v.y)}) + '\n';
    }
  }
  write_text(p, s);
}

Trajectory read_trajectory(const fs::path& p) {
  CsvReader r(p);
  r.header("t,id,x,y");
  Trajectory traj;
  std::vector<std::string_view> f;
  std::size_t row = 0;
  bool counting = true;  // still inside the first frame
  while (r.next(f)) {
    r.expect_fields(f, 4);
    const double t = r.value(f[0]);
    const auto id = r.integer<AgentId>(f[1]);
    if (counting && row > 0 && t != traj.times[0]) {
      counting = false;
      traj.n_agents = static_cast<AgentId>(row);
    }
    if (counting) {
      if (row == 0) traj.times.push_back(t);
    } else {
      const auto n = static_cast<std::size_t>(traj.n_agents);
      if (row % n == 0) {
        if (!(t > traj.times.back())) r.fail("frame times must increase");
        traj.times.push_back(t);
      }
      if (t != traj.times.back()) r.fail("frame has too few agents");
    }
    const std::size_t expect = counting ? row : row % static_cast<std::size_t>(traj.n_agents);
    if (static_cast<std::size_t>(id) != expect) {
      r.fail("rows must be ordered by (t, id) with ids 0..n-1");
    }
    traj.positions.push_back({r.value(f[2]), r.value(f[3])});
    ++row;
  }
  if (counting) traj.n_agents = static_cast<AgentId>(row);
  if (traj.n_agents > 0 && row % static_cast<std::size_t>(traj.n_agents) != 0) {
    r.fail("last frame has too few agents");
  }
  if (traj.times.size() >= 2) traj.dt = traj.times[1] - traj.times[0];
  return traj;
}

void write_events(const fs::path& p, const std::vector<EncounterEvent>& events) {
  std::string s = "t,id_a,id_b\n";
  for (const EncounterEvent& e : events) {
    s += join({format_time(e.t), std::to_string(e.id_a), std::to_string(e.id_b)}) + '\n';
  }
  write_text(p, s);
}

std::vector<EncounterEvent> read_events(const fs::path& p) {
  CsvReader r(p);
  r.header("t,id_a,id_b");
  std::vector<EncounterEvent> out;
  std::vector<std::string_view> f;
  while (r.next(f)) {
    r.expect_fields(f, 3);
    EncounterEvent e{r.value(f[0]), r.integer<AgentId>(f[1]), r.integer<AgentId>(f[2])};
    if (!(e.id_a < e.id_b)) r.fail("id_a must be smaller than id_b");
    if (!out.empty() && !(out.back() < e)) r.fail("events must be sorted by (t, id_a, id_b)");
    out.push_back(e);
  }
  return out;
}

void write_distances(const fs::path& p, const DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::string s = std::to_string(n) + '\n';
  s.reserve(n * n * 10 + 16);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) s += ',';
      s += format_value(d(i, j));
    }
    s += '\n';
  }
  write_text(p, s);
}

DistanceMatrix read_distances(const fs::path& p) {
  CsvReader r(p);
  std::vector<std::string_view> f;
  if (!r.next(f)) r.fail("empty file");
  r.expect_fields(f, 1);
  const auto n = r.integer<std::size_t>(f[0]);
  DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.next(f)) r.fail("expected " + std::to_string(n) + " rows");
    r.expect_fields(f, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = r.value(f[j]);
      if (v < 0.0) r.fail("negative distance");
      if (i == j && v != 0.0) r.fail("non-zero diagonal");
      if (j < i && v != d(j, i)) r.fail("matrix is not symmetric");
      d(i, j) = v;
    }
  }
  if (r.next(f)) r.fail("trailing data");
  return d;
}

void write_landmarks(const fs::path& p, const IndexList& idx) {
  std::string s;
  for (std::size_t i : idx) s += std::to_string(i) + '\n';
  write_text(p, s);
}

IndexList read_landmarks(const fs::path& p) {
  CsvReader r(p);
  IndexList out;
  std::vector<std::string_view> f;
  while (r.next(f)) {
    r.expect_fields(f, 1);
    out.push_back(r.integer<std::size_t>(f[0]));
  }
  return out;
}

void write_diagram(const fs::path& p, const PersistenceDiagram& dgm) {
  std::string s = "dim,birth,death\n";
  for (const PersistencePoint& pt : dgm.points) {
    s += join({std::to_string(pt.dim), format_value(pt.birth), format_value(pt.death)}) + '\n';
  }
  write_text(p, s);
}

PersistenceDiagram read_diagram(const fs::path& p) {
  CsvReader r(p);
  r.header("dim,birth,death");
  PersistenceDiagram dgm;
  std::vector<std::string_view> f;
  while (r.next(f)) {
    r.expect_fields(f, 3);
    PersistencePoint pt{r.integer<int>(f[0]), r.value(f[1]), r.value(f[2])};
    if (pt.dim < 0 || pt.dim > 1) r.fail("dimension must be 0 or 1");
    if (std::isinf(pt.birth) || pt.death < pt.birth) r.fail("need birth <= death");
    if (!dgm.points.empty() && pt < dgm.points.back()) r.fail("rows must be sorted");
    dgm.points.push_back(pt);
  }
  return dgm;
}

void write_embedding(const fs::path& p, const Embedding& e) {
  std::string s = e.dim == 3 ? "index,x,y,z\n" : "index,x,y\n";
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    s += std::to_string(i);
    for (double c : e.coords[i]) s += ',' + format_value(c);
    s += '\n';
  }
  write_text(p, s);
}

Embedding read_embedding(const fs::path& p) {
  CsvReader r(p);
  std::vector<std::string_view> f;
  if (!r.next(f)) r.fail("empty file");
  Embedding e;
  if (f.size() == 3 && f[0] == "index" && f[1] == "x" && f[2] == "y") {
    e.dim = 2;
  } else if (f.size() == 4 && f[0] == "index" && f[1] == "x" && f[2] == "y" && f[3] == "z") {
    e.dim = 3;
  } else {
    r.fail("expected header 'index,x,y' or 'index,x,y,z'");
  }
  while (r.next(f)) {
    r.expect_fields(f, static_cast<std::size_t>(e.dim) + 1);
    if (r.integer<std::size_t>(f[0]) != e.coords.size()) r.fail("indices must be 0..n-1 in order");
    std::vector<double> row;
    for (int k = 1; k <= e.dim; ++k) row.push_back(r.value(f[static_cast<std::size_t>(k)]));
    e.coords.push_back(std::move(row));
  }
  e.degenerate = e.coords.size() < static_cast<std::size_t>(e.dim) + 1;
  return e;
}

void write_classifier(const fs::path& p, const ClassifierRecord& c) {
  write_text(p, "q,delta,tau,cost\n" +
                    join({format_value(c.theta.q), format_value(c.theta.delta),
                          format_value(c.theta.tau), format_value(c.cost)}) +
                    '\n');
}

ClassifierRecord read_classifier(const fs::path& p) {
  CsvReader r(p);
  r.header("q,delta,tau,cost");
  std::vector<std::string_view> f;
  if (!r.next(f)) r.fail("missing parameter row");
  r.expect_fields(f, 4);
  ClassifierRecord c{{r.value(f[0]), r.value(f[1]), r.value(f[2])}, r.value(f[3])};
  try {
    c.theta.validate();
  } catch (const ConfigError& e) {
    r.fail(e.what());
  }
  return c;
}

void write_snr(const fs::path& p, const std::vector<SnrRecord>& rows) {
  std::string s = "run,method,snr\n";
  for (const SnrRecord& row : rows) {
    s += join({std::to_string(row.run), row.method, format_value(row.snr)}) + '\n';
  }
  write_text(p, s);
}

std::vector<SnrRecord> read_snr(const fs::path& p) {
  CsvReader r(p);
  r.header("run,method,snr");
  std::vector<SnrRecord> out;
  std::vector<std::string_view> f;
  while (r.next(f)) {
    r.expect_fields(f, 3);
    if (f[1].empty()) r.fail("empty method name");
    out.push_back({r.integer<int>(f[0]), std::string(f[1]), r.value(f[2])});
  }
  return out;
}

}  // namespace encmap::io
