#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dtnsim/map_graph.h"
#include "dtnsim/rng.h"
#include "dtnsim/types.h"

namespace dtnsim {

/// Per-host movement parameters. `admissible` is the vertex set used for
/// random starts and, for shortestPathMap/clustered hosts, for destinations.
struct MovementProfile {
  Movement mode = Movement::stationary;
  Range speed;
  Range wait;
  std::optional<Vec2> cluster_center;
  double cluster_range = 0.0;
  std::vector<std::size_t> admissible;
};

struct MovementState {
  Movement mode = Movement::stationary;
  Vec2 position;
  /// Last vertex reached; the host sits here or on the edge toward path.front().
  std::size_t at_vertex = 0;
  std::deque<std::size_t> path;
  /// Meters travelled from at_vertex toward path.front().
  double edge_progress = 0.0;
  double speed = 0.0;
  double wait_until = 0.0;
  std::size_t legs = 0;
};

/// Memoized shortest paths over one immutable map.
class PathCache {
 public:
  explicit PathCache(const MapGraph& map) : map_(&map) {}
  const std::optional<std::vector<std::size_t>>& get(std::size_t from, std::size_t to);
  const MapGraph& map() const { return *map_; }

 private:
  const MapGraph* map_;
  std::map<std::pair<std::size_t, std::size_t>, std::optional<std::vector<std::size_t>>> cache_;
};

/// Admissible vertex set for a profile: cluster-restricted for clustered
/// movement (or any profile with a cluster), the whole map otherwise.
std::vector<std::size_t> admissible_vertices(const MapGraph& map, Movement mode,
                                             std::optional<Vec2> cluster_center,
                                             double cluster_range);

/// Initial state at `start` (no leg in progress, free to depart at t = 0).
MovementState place_host(const MapGraph& map, const MovementProfile& profile, std::size_t start);

/// Next destination vertex for a non-stationary host.
std::size_t pick_destination(const MovementState& state, const MovementProfile& profile,
                             const MapGraph& map, Rng& rng);

/// Advances `state` from `now` to `now + dt`.
void step_host(MovementState& state, const MovementProfile& profile, PathCache& paths,
               double now, double dt, Rng& rng);

}  // namespace dtnsim
