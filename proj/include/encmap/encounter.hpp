#pragma once

#include <vector>

#include "encmap/swarm.hpp"

namespace encmap {

// Encounter between two agents, logged at the first frame of a proximity
// period. Invariant: id_a < id_b.
struct EncounterEvent {
  double t = 0.0;
  AgentId id_a = 0;
  AgentId id_b = 0;

  bool involves(AgentId k) const { return id_a == k || id_b == k; }
  auto operator<=>(const EncounterEvent&) const = default;
};

// Rising-edge encounter detection: a pair is reported at frame t when it is
// within r_d (closed ball) at t and either t is the first frame or it was
// farther than r_d at the previous frame. Uses a uniform grid with cell size
// r_d. Output sorted by (t, id_a, id_b). Throws ParameterError on an empty
// trajectory or non-positive r_d.
std::vector<EncounterEvent> detect_events(const Trajectory& traj, double r_d);

}  // namespace encmap
