#include "encmap/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "encmap/error.hpp"

namespace encmap {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

Rect loop_rect(const Environment& env, const WallLoop& loop) {
  if (loop.wall < 0) return env.outer().inflated(-loop.offset);
  return env.holes()[static_cast<std::size_t>(loop.wall)].inflated(loop.offset);
}

// Edge index (0 bottom, 1 right, 2 top, 3 left) and the arc length where it
// starts. When `s` sits exactly on a corner, moving with `dir` selects the
// edge being entered.
int edge_at(const Rect& r, double s, int dir, double* edge_start) {
  const double w = r.width();
  const double h = r.height();
  const double starts[4] = {0.0, w, w + h, 2.0 * w + h};
  const double ends[4] = {w, w + h, 2.0 * w + h, 2.0 * (w + h)};
  for (int e = 0; e < 4; ++e) {
    const bool inside = dir > 0 ? (s >= starts[e] && s < ends[e]) : (s > starts[e] && s <= ends[e]);
    if (inside) {
      *edge_start = starts[e];
      return e;
    }
  }
  *edge_start = dir > 0 ? 0.0 : starts[3];
  return dir > 0 ? 0 : 3;
}

Vec2 loop_point(const Rect& r, double s) {
  const double w = r.width();
  const double h = r.height();
  if (s <= w) return {r.x0 + s, r.y0};
  if (s <= w + h) return {r.x1, r.y0 + (s - w)};
  if (s <= 2.0 * w + h) return {r.x1 - (s - w - h), r.y1};
  return {r.x0, r.y1 - (s - 2.0 * w - h)};
}

// Counter-clockwise unit tangent of edge e.
Vec2 ccw_tangent(int e) {
  static const Vec2 kTangents[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kTangents[e];
}

// Arc length of a point lying on the boundary of r.
double arc_of(const Rect& r, Vec2 p) {
  const double w = r.width();
  const double h = r.height();
  const double d_bottom = std::abs(p.y - r.y0);
  const double d_right = std::abs(p.x - r.x1);
  const double d_top = std::abs(p.y - r.y1);
  const double d_left = std::abs(p.x - r.x0);
  const double m = std::min({d_bottom, d_right, d_top, d_left});
  if (m == d_bottom) return std::clamp(p.x - r.x0, 0.0, w);
  if (m == d_right) return w + std::clamp(p.y - r.y0, 0.0, h);
  if (m == d_top) return w + h + std::clamp(r.x1 - p.x, 0.0, w);
  return 2.0 * w + h + std::clamp(r.y1 - p.y, 0.0, h);
}

// Attaches to the nearest wall, returning the loop through p.
WallLoop nearest_loop(const Environment& env, Vec2 p) {
  const Rect& o = env.outer();
  WallLoop best;
  best.wall = -1;
  best.offset = std::max(0.0, std::min({p.x - o.x0, o.x1 - p.x, p.y - o.y0, o.y1 - p.y}));
  double best_dist = best.offset;
  for (std::size_t i = 0; i < env.holes().size(); ++i) {
    const Rect& hr = env.holes()[i];
    const double d = distance_to_rect(hr, p);
    if (d < best_dist) {
      best_dist = d;
      best.wall = static_cast<int>(i);
      // Chebyshev distance puts p exactly on the inflated square loop.
      best.offset = std::max({0.0, hr.x0 - p.x, p.x - hr.x1, hr.y0 - p.y, p.y - hr.y1});
    }
  }
  best.arc = arc_of(loop_rect(env, best), p);
  return best;
}

struct Clip {
  double fraction = 1.0;  // portion of the move that stays in free space
  int wall = -2;          // -2 none, -1 outer, else hole index
};

// First exit from free space along p + f * move, f in [0, 1].
Clip clip_move(const Environment& env, Vec2 p, Vec2 move) {
  Clip c;
  const Rect& o = env.outer();
  auto clip_axis = [&](double pos, double d, double lo, double hi) {
    if (d > 0.0 && pos + d > hi) c.fraction = std::min(c.fraction, (hi - pos) / d), c.wall = -1;
    if (d < 0.0 && pos + d < lo) c.fraction = std::min(c.fraction, (lo - pos) / d), c.wall = -1;
  };
  clip_axis(p.x, move.x, o.x0, o.x1);
  clip_axis(p.y, move.y, o.y0, o.y1);
  for (std::size_t i = 0; i < env.holes().size(); ++i) {
    const Rect& h = env.holes()[i];
    double t_in = -std::numeric_limits<double>::infinity();
    double t_out = std::numeric_limits<double>::infinity();
    bool miss = false;
    auto slab = [&](double pos, double d, double lo, double hi) {
      if (d == 0.0) {
        if (!(pos > lo && pos < hi)) miss = true;
        return;
      }
      double a = (lo - pos) / d;
      double b = (hi - pos) / d;
      if (a > b) std::swap(a, b);
      t_in = std::max(t_in, a);
      t_out = std::min(t_out, b);
    };
    slab(p.x, move.x, h.x0, h.x1);
    slab(p.y, move.y, h.y0, h.y1);
    if (miss || !(t_in < t_out) || t_out <= 0.0 || t_in >= 1.0) continue;
    const double f = std::max(0.0, t_in);
    if (f < c.fraction) {
      c.fraction = f;
      c.wall = static_cast<int>(i);
    }
  }
  return c;
}

// Moves a point that rounding left inside hole `wall` onto the hole's nearest side.
Vec2 snap_out_of_hole(const Rect& h, Vec2 p) {
  if (!h.contains_open(p)) return p;
  const double dl = p.x - h.x0, dr = h.x1 - p.x, db = p.y - h.y0, dt = h.y1 - p.y;
  const double m = std::min({dl, dr, db, dt});
  if (m == dl) return {h.x0, p.y};
  if (m == dr) return {h.x1, p.y};
  if (m == db) return {p.x, h.y0};
  return {p.x, h.y1};
}

void enter_wall_follow(AgentState& s, const MobilityParams& params, const Environment& env,
                       Rng& rng) {
  s.mode = Mode::kWallFollow;
  s.loop = nearest_loop(env, s.position);
  s.wf_direction = rng.bernoulli(0.5) ? 1 : -1;
  const Rect r = loop_rect(env, s.loop);
  double start = 0.0;
  const int e = edge_at(r, s.loop.arc, s.wf_direction, &start);
  const Vec2 t = ccw_tangent(e) * static_cast<double>(s.wf_direction);
  s.heading = std::atan2(t.y, t.x);
  s.mode_budget = rng.exponential(params.tau_exit);
}

void random_walk(AgentState& s, const MobilityParams& params, const Environment& env, double r_d,
                 Rng& rng, double dt) {
  const double step_len = params.v_c * dt;
  const Vec2 move = unit(s.heading) * step_len;
  const Clip clip = clip_move(env, s.position, move);
  const double d_old = env.distance_to_boundary(s.position);
  Vec2 next = s.position + move * clip.fraction;
  if (clip.wall >= 0) {
    next = snap_out_of_hole(env.holes()[static_cast<std::size_t>(clip.wall)], next);
  } else if (clip.wall == -1) {
    const Rect& o = env.outer();
    next = {std::clamp(next.x, o.x0, o.x1), std::clamp(next.y, o.y0, o.y1)};
  }
  if (!env.contains(next)) next = s.position;  // rounding guard
  s.position = next;
  s.mode_budget -= step_len * clip.fraction;

  const double d_new = env.distance_to_boundary(s.position);
  if (clip.wall != -2 || (d_new < r_d && d_new < d_old)) {
    enter_wall_follow(s, params, env, rng);
    return;
  }
  if (s.mode_budget <= 0.0) {
    s.heading = sample_reorientation(rng);
    s.mode_budget = sample_segment_length(rng, params.l_star);
  }
}

void wall_follow(AgentState& s, const MobilityParams& params, const Environment& env, Rng& rng,
                 double dt) {
  const Rect r = loop_rect(env, s.loop);
  const double perimeter = r.perimeter();
  double arc = s.loop.arc + s.wf_direction * params.v_p * dt;
  arc = std::fmod(arc, perimeter);
  if (arc < 0.0) arc += perimeter;
  s.loop.arc = arc;
  s.position = loop_point(r, arc);
  double start = 0.0;
  const int e = edge_at(r, arc, s.wf_direction, &start);
  const Vec2 ccw = ccw_tangent(e);
  const Vec2 tangent = ccw * static_cast<double>(s.wf_direction);
  s.heading = std::atan2(tangent.y, tangent.x);
  s.mode_budget -= dt;
  if (s.mode_budget > 0.0) return;

  // Leave the wall at an angle in [0, pi] from the tangent, into free space.
  Vec2 normal{-ccw.y, ccw.x};  // left of counter-clockwise travel = rectangle interior
  if (s.loop.wall >= 0) normal = normal * -1.0;
  const double theta = rng.uniform(0.0, std::numbers::pi);
  const Vec2 dir = tangent * std::cos(theta) + normal * std::sin(theta);
  s.heading = std::atan2(dir.y, dir.x);
  s.mode = Mode::kRandomWalk;
  s.mode_budget = sample_segment_length(rng, params.l_star);
}

}  // namespace

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kRandomWalk: return "RW";
    case Mode::kWallFollow: return "WF";
    case Mode::kStop: return "S";
  }
  return "?";
}

Mode parse_mode(std::string_view s) {
  if (s == "RW") return Mode::kRandomWalk;
  if (s == "WF") return Mode::kWallFollow;
  if (s == "S") return Mode::kStop;
  throw ParameterError("unknown mode '" + std::string(s) + "'");
}

void MobilityParams::validate() const {
  for (double v : {v_c, v_p, l_star, tau_exit, tau_stop, tau_s, tau_l}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError("mobility: speeds, lengths and durations must be positive and finite");
    }
  }
  if (!(p_sh >= 0.0 && p_sh <= 1.0)) throw ConfigError("mobility: p_sh must lie in [0, 1]");
}

void SimConfig::validate() const {
  if (n_agents <= 0) throw ConfigError("sim: n_agents must be positive");
  if (!(dt > 0.0)) throw ConfigError("sim: dt must be positive");
  if (!(t_f >= dt)) throw ConfigError("sim: t_f must be at least dt");
  if (!(static_fraction >= 0.0 && static_fraction <= 1.0)) {
    throw ConfigError("sim: static_fraction must lie in [0, 1]");
  }
  if (!(static_activation_time >= 0.0)) {
    throw ConfigError("sim: static_activation_time must be non-negative");
  }
}

int SimConfig::n_frames() const {
  return static_cast<int>(std::llround(t_f / dt));
}

int SimConfig::n_static() const {
  return static_cast<int>(std::floor(static_fraction * n_agents + 1e-9));
}

double sample_segment_length(Rng& rng, double l_star) { return rng.exponential(l_star); }

double sample_reorientation(Rng& rng) {
  const double a = kTwoPi * rng.uniform01();
  return a < kTwoPi ? a : std::nextafter(kTwoPi, 0.0);
}

double sample_stop_duration(Rng& rng, const MobilityParams& params) {
  const bool is_short = rng.bernoulli(params.p_sh);
  return rng.exponential(is_short ? params.tau_s : params.tau_l);
}

AgentState step(const AgentState& state, const MobilityParams& params, const Environment& env,
                double r_d, Rng& rng, double dt) {
  AgentState s = state;
  if (s.mode == Mode::kStop) {
    if (s.is_static) return s;
    s.mode_budget -= dt;
    if (s.mode_budget <= 0.0) {
      s.mode = s.resume_mode;
      s.mode_budget = s.mode == Mode::kRandomWalk ? sample_segment_length(rng, params.l_star)
                                                   : rng.exponential(params.tau_exit);
    }
    return s;
  }
  if (!s.is_static && rng.bernoulli(-std::expm1(-dt / params.tau_stop))) {
    s.resume_mode = s.mode;
    s.mode = Mode::kStop;
    s.mode_budget = sample_stop_duration(rng, params);
    return s;
  }
  if (s.mode == Mode::kRandomWalk) {
    random_walk(s, params, env, r_d, rng, dt);
  } else {
    wall_follow(s, params, env, rng, dt);
  }
  return s;
}

double frame_time(int frame, double dt) {
  return std::round(static_cast<double>(frame) * dt * 1e6) / 1e6;
}

SimResult simulate(const SimConfig& config, const MobilityParams& params, const Environment& env,
                   double r_d) {
  config.validate();
  params.validate();
  if (!(r_d > 0.0)) throw ConfigError("sensing: r_d must be positive");
  if (!(env.min_clearance() > 2.0 * r_d)) {
    throw ConfigError("environment: wall clearance must exceed 2 * r_d for wall following");
  }

  Rng rng(config.seed);
  const int n = config.n_agents;
  const int frames = config.n_frames();

  SimResult out;
  Trajectory& traj = out.trajectory;
  traj.n_agents = n;
  traj.dt = config.dt;
  traj.times.reserve(static_cast<std::size_t>(frames));
  traj.positions.reserve(static_cast<std::size_t>(frames) * n);

  std::vector<AgentState> agents(static_cast<std::size_t>(n));
  const Rect& o = env.outer();
  for (AgentId id = 0; id < n; ++id) {
    AgentState& a = agents[static_cast<std::size_t>(id)];
    a.id = id;
    do {
      a.position = {rng.uniform(o.x0, o.x1), rng.uniform(o.y0, o.y1)};
    } while (!env.contains(a.position));
    a.heading = sample_reorientation(rng);
    a.mode = Mode::kRandomWalk;
    a.mode_budget = sample_segment_length(rng, params.l_star);
    out.status.push_back({0.0, id, Mode::kRandomWalk});
  }

  traj.times.push_back(frame_time(0, config.dt));
  for (const AgentState& a : agents) traj.positions.push_back(a.position);

  const int n_static = config.n_static();
  bool activated = n_static == 0;
  for (int f = 1; f < frames; ++f) {
    const double t = frame_time(f, config.dt);
    for (AgentState& a : agents) {
      const Mode before = a.mode;
      a = step(a, params, env, r_d, rng, config.dt);
      if (!activated && t >= config.static_activation_time && a.id < n_static) {
        a.is_static = true;
        a.mode = Mode::kStop;
        a.mode_budget = 0.0;
      }
      if (a.mode != before) out.status.push_back({t, a.id, a.mode});
    }
    if (!activated && t >= config.static_activation_time) activated = true;
    traj.times.push_back(t);
    for (const AgentState& a : agents) traj.positions.push_back(a.position);
  }
  for (AgentId id = 0; id < n_static; ++id) out.static_agents.push_back(id);
  return out;
}

StopIntervals stop_intervals(const StatusLog& log) {
  StopIntervals out;
  std::map<AgentId, double> open;
  for (const StatusRecord& r : log) {
    auto it = open.find(r.id);
    if (r.mode == Mode::kStop) {
      if (it == open.end()) open.emplace(r.id, r.t);
    } else if (it != open.end()) {
      out[r.id].push_back({it->second, r.t});
      open.erase(it);
    }
  }
  for (const auto& [id, begin] : open) {
    out[id].push_back({begin, std::numeric_limits<double>::infinity()});
  }
  return out;
}

}  // namespace encmap
