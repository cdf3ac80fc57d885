#include "encmap/scenario.hpp"

#include <charconv>
#include <cmath>
#include <initializer_list>
#include <set>
#include <string>

#include <yaml-cpp/yaml.h>

#include "encmap/error.hpp"
#include "encmap/io.hpp"

namespace encmap {
namespace {

// A mapping node plus its dotted path, for error messages.
class Section {
 public:
  Section(YAML::Node node, std::string path, std::initializer_list<const char*> allowed)
      : node_(std::move(node)), path_(std::move(path)) {
    if (!node_ || node_.IsNull()) return;
    if (!node_.IsMap()) throw ConfigError(where() + "must be a mapping");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!ok.count(key)) throw ConfigError(where() + "unknown key '" + key + "'");
    }
  }

  bool has(const char* key) const { return node_ && node_.IsMap() && node_[key]; }
  YAML::Node child(const char* key) const { return has(key) ? node_[key] : YAML::Node(); }
  std::string path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  template <typename T>
  void get(const char* key, T& out) const {
    if (!has(key)) return;
    try {
      out = node_[key].as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(path(key) + ": wrong type");
    }
  }

  void get_optional(const char* key, std::optional<double>& out) const {
    if (!has(key)) return;
    if (node_[key].IsNull()) {
      out.reset();
      return;
    }
    double v = 0.0;
    get(key, v);
    out = v;
  }

 private:
  std::string where() const { return path_.empty() ? "" : path_ + ": "; }

  YAML::Node node_;
  std::string path_;
};

Rect parse_rect(const YAML::Node& n, const std::string& path) {
  if (!n.IsSequence() || n.size() != 4) throw ConfigError(path + ": expected [x0, y0, x1, y1]");
  try {
    return {n[0].as<double>(), n[1].as<double>(), n[2].as<double>(), n[3].as<double>()};
  } catch (const YAML::Exception&) {
    throw ConfigError(path + ": expected four numbers");
  }
}

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void emit_rect(YAML::Emitter& e, const Rect& r) {
  e << YAML::Flow << YAML::BeginSeq << num(r.x0) << num(r.y0) << num(r.x1) << num(r.y1)
    << YAML::EndSeq;
}

}  // namespace

std::string_view batch_mode_name(BatchMode m) {
  switch (m) {
    case BatchMode::kSnr: return "snr";
    case BatchMode::kTrain: return "train";
    case BatchMode::kEvaluate: return "evaluate";
  }
  return "?";
}

BatchMode parse_batch_mode(std::string_view s) {
  if (s == "snr") return BatchMode::kSnr;
  if (s == "train") return BatchMode::kTrain;
  if (s == "evaluate") return BatchMode::kEvaluate;
  throw ConfigError("unknown batch mode '" + std::string(s) + "'");
}

void Scenario::validate() const {
  mobility.validate();
  sim.validate();
  classifier.validate();
  if (!(r_d > 0.0) || !std::isfinite(r_d)) throw ConfigError("sensing: r_d must be positive");
  if (!batch.layout && !(env.min_clearance() > 2.0 * r_d)) {
    throw ConfigError("environment: wall clearance must exceed 2 * r_d");
  }
  const SubsampleParams& s = subsample;
  if (s.m < 1) throw ConfigError("subsample: n_landmarks must be at least 1");
  if (s.k < 1) throw ConfigError("subsample: k must be at least 1");
  if (!(s.q > 0.0 && s.q <= 1.0)) throw ConfigError("subsample: q must lie in (0, 1]");
  if (s.omega && !(*s.omega >= 0.0)) throw ConfigError("subsample: omega must be non-negative");
  if (eps_max && !(*eps_max > 0.0)) throw ConfigError("homology: eps_max must be positive");
  if (embed_dim != 2 && embed_dim != 3) throw ConfigError("embedding: dim must be 2 or 3");
  if (smooth_alpha && !(*smooth_alpha > 0.0)) {
    throw ConfigError("classifier: smooth_alpha must be positive");
  }
  if (batch.n_runs < 1) throw ConfigError("batch: n_runs must be at least 1");
  if (batch.methods.empty()) throw ConfigError("batch: methods must not be empty");
  if (const auto& l = batch.layout) {
    if (l->n_holes < 0) throw ConfigError("batch.layout: n_holes must be non-negative");
    if (!(l->hole_side > 0.0)) throw ConfigError("batch.layout: hole_side must be positive");
    if (!(l->clearance > 2.0 * r_d)) {
      throw ConfigError("batch.layout: clearance must exceed 2 * r_d");
    }
  }
}

void Scenario::set_seed(std::uint64_t seed) {
  sim.seed = seed;
  subsample.seed = seed;
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  Scenario s;
  const Section top(root, "",
                    {"environment", "mobility", "sensing", "simulation", "metric", "subsample",
                     "homology", "embedding", "classifier", "batch"});

  const Section env(top.child("environment"), "environment", {"outer_m", "holes_m"});
  Rect outer = s.env.outer();
  std::vector<Rect> holes = s.env.holes();
  if (env.has("outer_m")) outer = parse_rect(env.child("outer_m"), env.path("outer_m"));
  if (env.has("holes_m")) {
    const YAML::Node h = env.child("holes_m");
    if (!h.IsSequence() && !h.IsNull()) throw ConfigError("environment.holes_m: expected a list");
    holes.clear();
    for (std::size_t i = 0; i < h.size(); ++i) {
      holes.push_back(parse_rect(h[i], "environment.holes_m[" + std::to_string(i) + "]"));
    }
  }
  s.env = Environment(outer, holes);

  const Section mob(top.child("mobility"), "mobility",
                    {"v_c_m_per_s", "v_p_m_per_s", "l_star_m", "tau_exit_s", "tau_stop_s",
                     "p_short", "tau_short_s", "tau_long_s"});
  mob.get("v_c_m_per_s", s.mobility.v_c);
  mob.get("v_p_m_per_s", s.mobility.v_p);
  mob.get("l_star_m", s.mobility.l_star);
  mob.get("tau_exit_s", s.mobility.tau_exit);
  mob.get("tau_stop_s", s.mobility.tau_stop);
  mob.get("p_short", s.mobility.p_sh);
  mob.get("tau_short_s", s.mobility.tau_s);
  mob.get("tau_long_s", s.mobility.tau_l);

  const Section sens(top.child("sensing"), "sensing", {"r_d_m"});
  sens.get("r_d_m", s.r_d);

  const Section sim(top.child("simulation"), "simulation",
                    {"n_agents", "t_f_s", "dt_s", "seed", "static_fraction", "static_activation_s",
                     "write_trajectory"});
  sim.get("n_agents", s.sim.n_agents);
  sim.get("t_f_s", s.sim.t_f);
  sim.get("dt_s", s.sim.dt);
  sim.get("seed", s.sim.seed);
  sim.get("static_fraction", s.sim.static_fraction);
  sim.get("static_activation_s", s.sim.static_activation_time);
  sim.get("write_trajectory", s.write_trajectory);
  s.subsample.seed = s.sim.seed;

  const Section met(top.child("metric"), "metric", {"mode"});
  if (met.has("mode")) {
    std::string m;
    met.get("mode", m);
    s.metric_mode = parse_metric_mode(m);
  }

  const Section sub(top.child("subsample"), "subsample",
                    {"method", "n_landmarks", "k", "q", "omega", "seed"});
  if (sub.has("method")) {
    std::string m;
    sub.get("method", m);
    s.subsample.method = parse_subsample_method(m);
  }
  sub.get("n_landmarks", s.subsample.m);
  sub.get("k", s.subsample.k);
  sub.get("q", s.subsample.q);
  sub.get_optional("omega", s.subsample.omega);
  sub.get("seed", s.subsample.seed);

  const Section hom(top.child("homology"), "homology", {"eps_max_s"});
  hom.get_optional("eps_max_s", s.eps_max);

  const Section emb(top.child("embedding"), "embedding", {"dim"});
  emb.get("dim", s.embed_dim);

  const Section cls(top.child("classifier"), "classifier", {"q", "delta_s", "tau", "smooth_alpha"});
  cls.get("q", s.classifier.q);
  cls.get("delta_s", s.classifier.delta);
  cls.get("tau", s.classifier.tau);
  cls.get_optional("smooth_alpha", s.smooth_alpha);

  const Section bat(top.child("batch"), "batch",
                    {"n_runs", "seed_base", "mode", "methods", "layout", "keep_artifacts"});
  bat.get("n_runs", s.batch.n_runs);
  bat.get("seed_base", s.batch.seed_base);
  bat.get("keep_artifacts", s.batch.keep_artifacts);
  if (bat.has("mode")) {
    std::string m;
    bat.get("mode", m);
    s.batch.mode = parse_batch_mode(m);
  }
  if (bat.has("methods")) {
    std::vector<std::string> names;
    bat.get("methods", names);
    s.batch.methods.clear();
    for (const std::string& n : names) s.batch.methods.push_back(parse_subsample_method(n));
  }
  if (bat.has("layout") && !bat.child("layout").IsNull()) {
    const Section lay(bat.child("layout"), "batch.layout", {"n_holes", "hole_side_m", "clearance_m"});
    RandomLayout l;
    lay.get("n_holes", l.n_holes);
    lay.get("hole_side_m", l.hole_side);
    lay.get("clearance_m", l.clearance);
    s.batch.layout = l;
  }

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& p) {
  return parse_scenario(io::read_text(p));
}

std::string dump_scenario(const Scenario& s) {
  YAML::Emitter e;
  e << YAML::BeginMap;

  e << YAML::Key << "environment" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "outer_m" << YAML::Value;
  emit_rect(e, s.env.outer());
  e << YAML::Key << "holes_m" << YAML::Value << YAML::BeginSeq;
  for (const Rect& h : s.env.holes()) emit_rect(e, h);
  e << YAML::EndSeq << YAML::EndMap;

  const MobilityParams& m = s.mobility;
  e << YAML::Key << "mobility" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "v_c_m_per_s" << YAML::Value << num(m.v_c);
  e << YAML::Key << "v_p_m_per_s" << YAML::Value << num(m.v_p);
  e << YAML::Key << "l_star_m" << YAML::Value << num(m.l_star);
  e << YAML::Key << "tau_exit_s" << YAML::Value << num(m.tau_exit);
  e << YAML::Key << "tau_stop_s" << YAML::Value << num(m.tau_stop);
  e << YAML::Key << "p_short" << YAML::Value << num(m.p_sh);
  e << YAML::Key << "tau_short_s" << YAML::Value << num(m.tau_s);
  e << YAML::Key << "tau_long_s" << YAML::Value << num(m.tau_l);
  e << YAML::EndMap;

  e << YAML::Key << "sensing" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "r_d_m" << YAML::Value << num(s.r_d) << YAML::EndMap;

  e << YAML::Key << "simulation" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "n_agents" << YAML::Value << s.sim.n_agents;
  e << YAML::Key << "t_f_s" << YAML::Value << num(s.sim.t_f);
  e << YAML::Key << "dt_s" << YAML::Value << num(s.sim.dt);
  e << YAML::Key << "seed" << YAML::Value << s.sim.seed;
  e << YAML::Key << "static_fraction" << YAML::Value << num(s.sim.static_fraction);
  e << YAML::Key << "static_activation_s" << YAML::Value << num(s.sim.static_activation_time);
  e << YAML::Key << "write_trajectory" << YAML::Value << s.write_trajectory;
  e << YAML::EndMap;

  e << YAML::Key << "metric" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "mode" << YAML::Value << std::string(metric_mode_name(s.metric_mode));
  e << YAML::EndMap;

  const SubsampleParams& sp = s.subsample;
  e << YAML::Key << "subsample" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "method" << YAML::Value << std::string(subsample_method_name(sp.method));
  e << YAML::Key << "n_landmarks" << YAML::Value << sp.m;
  e << YAML::Key << "k" << YAML::Value << sp.k;
  e << YAML::Key << "q" << YAML::Value << num(sp.q);
  e << YAML::Key << "omega" << YAML::Value;
  if (sp.omega) e << num(*sp.omega); else e << YAML::Null;
  e << YAML::Key << "seed" << YAML::Value << sp.seed;
  e << YAML::EndMap;

  e << YAML::Key << "homology" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "eps_max_s" << YAML::Value;
  if (s.eps_max) e << num(*s.eps_max); else e << YAML::Null;
  e << YAML::EndMap;

  e << YAML::Key << "embedding" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "dim" << YAML::Value << s.embed_dim << YAML::EndMap;

  e << YAML::Key << "classifier" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "q" << YAML::Value << num(s.classifier.q);
  e << YAML::Key << "delta_s" << YAML::Value << num(s.classifier.delta);
  e << YAML::Key << "tau" << YAML::Value << num(s.classifier.tau);
  e << YAML::Key << "smooth_alpha" << YAML::Value;
  if (s.smooth_alpha) e << num(*s.smooth_alpha); else e << YAML::Null;
  e << YAML::EndMap;

  const BatchConfig& b = s.batch;
  e << YAML::Key << "batch" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "n_runs" << YAML::Value << b.n_runs;
  e << YAML::Key << "seed_base" << YAML::Value << b.seed_base;
  e << YAML::Key << "mode" << YAML::Value << std::string(batch_mode_name(b.mode));
  e << YAML::Key << "methods" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (SubsampleMethod mm : b.methods) e << std::string(subsample_method_name(mm));
  e << YAML::EndSeq;
  e << YAML::Key << "layout" << YAML::Value;
  if (b.layout) {
    e << YAML::BeginMap;
    e << YAML::Key << "n_holes" << YAML::Value << b.layout->n_holes;
    e << YAML::Key << "hole_side_m" << YAML::Value << num(b.layout->hole_side);
    e << YAML::Key << "clearance_m" << YAML::Value << num(b.layout->clearance);
    e << YAML::EndMap;
  } else {
    e << YAML::Null;
  }
  e << YAML::Key << "keep_artifacts" << YAML::Value << b.keep_artifacts;
  e << YAML::EndMap;

  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace encmap
