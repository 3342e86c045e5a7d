#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dtnsim {

class Rng;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Undirected geometric graph. Vertices are stored sorted by their external
/// id, so dense index order and id order coincide.
class MapGraph {
 public:
  struct Vertex {
    std::int64_t id = 0;
    Vec2 pos;
  };

  MapGraph() = default;

  /// Validates and builds the graph. Throws ConfigError on duplicate vertex
  /// ids, dangling edge endpoints or self-loops. Duplicate edges collapse.
  MapGraph(std::vector<Vertex> vertices,
           const std::vector<std::pair<std::int64_t, std::int64_t>>& edges);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::int64_t id(std::size_t v) const { return vertices_[v].id; }
  Vec2 position(std::size_t v) const { return vertices_[v].pos; }
  std::optional<std::size_t> index_of(std::int64_t id) const;

  /// Sorted neighbour indices.
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }

  /// Canonical (lo, hi) index pairs, sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  double edge_length(std::size_t a, std::size_t b) const {
    return distance(vertices_[a].pos, vertices_[b].pos);
  }

  /// Connected-component label per vertex (labels are 0..k-1 in order of
  /// the lowest vertex index in each component).
  const std::vector<std::size_t>& components() const { return component_; }

  std::vector<std::size_t> vertices_within(Vec2 center, double range) const;
  std::size_t nearest_vertex(Vec2 p) const;

  friend bool operator==(const MapGraph& a, const MapGraph& b);

 private:
  std::vector<Vertex> vertices_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> component_;
  std::unordered_map<std::int64_t, std::size_t> index_;
};

/// Parses the line-oriented map format (`V <id> <x> <y>`, `E <id> <id>`,
/// `#` comments).
MapGraph load_map(std::string_view text);

/// Inverse of load_map; coordinates are written with round-trip precision.
std::string save_map(const MapGraph& map);

struct AirportMapParams {
  double width = 2000.0;
  double height = 1500.0;
  double corridor_spacing = 250.0;
  std::vector<Vec2> gates = {{1200.0, 1000.0}, {1300.0, 1050.0}, {1400.0, 1100.0}};
  std::uint32_t shops = 25;
  std::uint32_t restrooms = 20;
  /// Spur vertices are placed within this distance of their anchor gate.
  double spur_radius = 180.0;
};

/// Corridor grid over the extent plus a concourse spine through the gates
/// and spur vertices for shops (around the first gate) and restrooms
/// (around the second). The result is connected.
MapGraph generate_airport_map(const AirportMapParams& params, Rng& rng);

/// Minimal Euclidean-length path, ties broken by the lexicographically
/// smallest vertex sequence. Returns nullopt when `to` is unreachable.
std::optional<std::vector<std::size_t>> shortest_path(const MapGraph& map,
                                                      std::size_t from,
                                                      std::size_t to);

double path_length(const MapGraph& map, const std::vector<std::size_t>& path);

}  // namespace dtnsim
