#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "encmap/env.hpp"
#include "encmap/rng.hpp"

namespace encmap {

using AgentId = std::int32_t;

enum class Mode : std::uint8_t { kRandomWalk, kWallFollow, kStop };

std::string_view mode_name(Mode m);  // "RW", "WF", "S"
Mode parse_mode(std::string_view s);   // throws ParameterError

// Cockroach-inspired mobility parameters. Speeds in m/s, lengths in m,
// durations in s.
struct MobilityParams {
  double v_c = 0.3;        // random-walk speed
  double v_p = 0.2;        // wall-following speed
  double l_star = 3.0;     // mean random-walk segment length
  double tau_exit = 2.0;   // mean wall-following dwell
  double tau_stop = 5.0;   // mean time between stops
  double p_sh = 0.7;       // probability that a stop is short
  double tau_s = 1.0;      // mean short stop
  double tau_l = 10.0;     // mean long stop

  void validate() const;  // throws ConfigError
  double max_speed() const { return v_c > v_p ? v_c : v_p; }
};

struct SimConfig {
  int n_agents = 200;
  double t_f = 20.0;
  double dt = 0.05;
  std::uint64_t seed = 1;
  double static_fraction = 0.0;
  double static_activation_time = 1.0;

  void validate() const;  // throws ConfigError
  int n_frames() const;   // frames at t = 0, dt, ..., strictly before t_f
  int n_static() const;
};

// Boundary loop an agent follows in wall-following mode: the outer wall inset
// by `offset`, or a hole inflated by `offset` (square corners in both cases).
struct WallLoop {
  int wall = -1;        // -1 = outer boundary, otherwise hole index
  double offset = 0.0;  // meters from the wall
  double arc = 0.0;     // arc length along the loop, counter-clockwise from (x0, y0)
};

struct AgentState {
  AgentId id = 0;
  Vec2 position;
  double heading = 0.0;  // radians
  Mode mode = Mode::kRandomWalk;
  double mode_budget = 0.0;  // RW: meters left in segment; WF/S: seconds left
  int wf_direction = 1;      // +1 counter-clockwise along the loop, -1 clockwise
  Mode resume_mode = Mode::kRandomWalk;
  bool is_static = false;
  WallLoop loop;
};

double sample_segment_length(Rng& rng, double l_star);
double sample_reorientation(Rng& rng);
double sample_stop_duration(Rng& rng, const MobilityParams& params);

// One time step of the RW / WF / S state machine.
AgentState step(const AgentState& state, const MobilityParams& params, const Environment& env,
                double r_d, Rng& rng, double dt);

// Frame time k * dt, rounded to whole microseconds so that the 6-decimal CSV
// representation round-trips exactly.
double frame_time(int frame, double dt);

struct Trajectory {
  int n_agents = 0;
  double dt = 0.0;
  std::vector<double> times;      // one per frame
  std::vector<Vec2> positions;    // frame-major: [frame * n_agents + id]

  int n_frames() const { return static_cast<int>(times.size()); }
  Vec2 at(int frame, AgentId id) const {
    return positions[static_cast<std::size_t>(frame) * n_agents + id];
  }
};

struct StatusRecord {
  double t = 0.0;
  AgentId id = 0;
  Mode mode = Mode::kRandomWalk;
  bool operator==(const StatusRecord&) const = default;
};

// Initial mode of every agent at t = 0 followed by every later mode change,
// in (t, id) order. A record's time is the first frame in the new mode.
using StatusLog = std::vector<StatusRecord>;

struct SimResult {
  Trajectory trajectory;
  StatusLog status;
  std::vector<AgentId> static_agents;
};

// Requires env.min_clearance() > 2 * r_d so wall-following loops stay in
// free space; throws ConfigError otherwise.
SimResult simulate(const SimConfig& config, const MobilityParams& params, const Environment& env,
                   double r_d);

struct Interval {
  double begin = 0.0;
  double end = 0.0;  // +inf when the stop lasts past the horizon
  bool contains(double t) const { return t >= begin && t <= end; }
};

// Closed stop intervals per agent, reconstructed from consecutive S-entry /
// S-exit records. Intervals of one agent are sorted and disjoint.
using StopIntervals = std::map<AgentId, std::vector<Interval>>;
StopIntervals stop_intervals(const StatusLog& log);

}  // namespace encmap
