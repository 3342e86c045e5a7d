#include "dtnsim/mobility.h"

#include <algorithm>

namespace dtnsim {

const std::optional<std::vector<std::size_t>>& PathCache::get(std::size_t from, std::size_t to) {
  auto key = std::pair{from, to};
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, shortest_path(*map_, from, to)).first;
  return it->second;
}

std::vector<std::size_t> admissible_vertices(const MapGraph& map, Movement mode,
                                             std::optional<Vec2> cluster_center,
                                             double cluster_range) {
  if (cluster_center && (mode == Movement::clustered || mode == Movement::stationary)) {
    return map.vertices_within(*cluster_center, cluster_range);
  }
  std::vector<std::size_t> all(map.vertex_count());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  return all;
}

MovementState place_host(const MapGraph& map, const MovementProfile& profile, std::size_t start) {
  MovementState s;
  s.mode = profile.mode;
  s.at_vertex = start;
  s.position = map.position(start);
  return s;
}

std::size_t pick_destination(const MovementState& state, const MovementProfile& profile,
                             const MapGraph& map, Rng& rng) {
  if (profile.mode == Movement::stationary) return state.at_vertex;
  if (profile.mode == Movement::map_random) {
    const auto& nb = map.neighbors(state.at_vertex);
    if (nb.empty()) return state.at_vertex;
    return nb[rng.index(nb.size())];
  }
  const auto& comp = map.components();
  const std::size_t here = comp[state.at_vertex];
  bool all_reachable = std::all_of(profile.admissible.begin(), profile.admissible.end(),
                                   [&](std::size_t v) { return comp[v] == here; });
  if (all_reachable) {
    if (profile.admissible.empty()) return state.at_vertex;
    return profile.admissible[rng.index(profile.admissible.size())];
  }
  std::vector<std::size_t> reachable;
  for (std::size_t v : profile.admissible) {
    if (comp[v] == here) reachable.push_back(v);
  }
  if (reachable.empty()) return state.at_vertex;
  return reachable[rng.index(reachable.size())];
}

namespace {

void update_position(MovementState& s, const MapGraph& map) {
  if (s.path.empty() || s.edge_progress <= 0.0) {
    s.position = map.position(s.at_vertex);
    return;
  }
  Vec2 a = map.position(s.at_vertex);
  Vec2 b = map.position(s.path.front());
  double len = distance(a, b);
  double f = len > 0.0 ? s.edge_progress / len : 0.0;
  s.position = {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
}

}  // namespace

void step_host(MovementState& s, const MovementProfile& profile, PathCache& paths, double now,
               double dt, Rng& rng) {
  if (profile.mode == Movement::stationary) return;
  // The tolerance absorbs rounding between `now + dt` and the next tick's
  // time, which would otherwise add a spurious tick to some waits.
  if (now < s.wait_until - 1e-9) return;
  const MapGraph& map = paths.map();
  const double arrival = now + dt;

  if (s.path.empty()) {
    std::size_t dest = pick_destination(s, profile, map, rng);
    if (dest != s.at_vertex) {
      if (profile.mode == Movement::map_random) {
        s.path.push_back(dest);
      } else if (const auto& p = paths.get(s.at_vertex, dest); p && p->size() > 1) {
        s.path.assign(p->begin() + 1, p->end());
      }
    }
    s.speed = rng.uniform(profile.speed.min, profile.speed.max);
    s.edge_progress = 0.0;
    ++s.legs;
    if (s.path.empty()) {
      s.wait_until = arrival + rng.uniform(profile.wait.min, profile.wait.max);
      return;
    }
  }

  double remaining = s.speed * dt;
  while (remaining > 0.0 && !s.path.empty()) {
    std::size_t next = s.path.front();
    double left = map.edge_length(s.at_vertex, next) - s.edge_progress;
    if (remaining < left) {
      s.edge_progress += remaining;
      remaining = 0.0;
    } else {
      remaining -= left;
      s.at_vertex = next;
      s.edge_progress = 0.0;
      s.path.pop_front();
    }
  }
  if (s.path.empty()) {
    // Leg complete; leftover distance is dropped and the host waits.
    s.wait_until = arrival + rng.uniform(profile.wait.min, profile.wait.max);
  }
  update_position(s, map);
}

}  // namespace dtnsim
