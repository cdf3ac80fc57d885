#include "encmap/encounter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include "encmap/error.hpp"

namespace encmap {
namespace {

using PairKey = std::uint64_t;

PairKey pair_key(AgentId a, AgentId b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

// Sorted keys of all pairs within r_d at one frame.
void pairs_in_range(const Trajectory& traj, int frame, double r_d, std::vector<PairKey>& out) {
  out.clear();
  const int n = traj.n_agents;
  const double r2 = r_d * r_d;
  const double inv = 1.0 / r_d;

  std::unordered_map<std::uint64_t, std::vector<AgentId>> cells;
  cells.reserve(static_cast<std::size_t>(n));
  auto cell_key = [](std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ static_cast<std::uint32_t>(cy);
  };
  std::vector<std::int64_t> cx(static_cast<std::size_t>(n)), cy(static_cast<std::size_t>(n));
  for (AgentId id = 0; id < n; ++id) {
    const Vec2 p = traj.at(frame, id);
    cx[id] = static_cast<std::int64_t>(std::floor(p.x * inv));
    cy[id] = static_cast<std::int64_t>(std::floor(p.y * inv));
    cells[cell_key(cx[id], cy[id])].push_back(id);
  }
  for (AgentId a = 0; a < n; ++a) {
    const Vec2 pa = traj.at(frame, a);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = cells.find(cell_key(cx[a] + dx, cy[a] + dy));
        if (it == cells.end()) continue;
        for (AgentId b : it->second) {
          if (b <= a) continue;
          const Vec2 d = traj.at(frame, b) - pa;
          if (d.x * d.x + d.y * d.y <= r2) out.push_back(pair_key(a, b));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

std::vector<EncounterEvent> detect_events(const Trajectory& traj, double r_d) {
  if (traj.n_frames() == 0 || traj.n_agents == 0) {
    throw ParameterError("detect_events: empty trajectory");
  }
  if (!(r_d > 0.0)) throw ParameterError("detect_events: r_d must be positive");

  std::vector<EncounterEvent> events;
  std::vector<PairKey> prev, cur, rising;
  for (int f = 0; f < traj.n_frames(); ++f) {
    pairs_in_range(traj, f, r_d, cur);
    rising.clear();
    std::set_difference(cur.begin(), cur.end(), prev.begin(), prev.end(),
                        std::back_inserter(rising));
    for (PairKey k : rising) {
      events.push_back({traj.times[static_cast<std::size_t>(f)], static_cast<AgentId>(k >> 32),
                        static_cast<AgentId>(k & 0xffffffffu)});
    }
    std::swap(prev, cur);
  }
  return events;
}

}  // namespace encmap
