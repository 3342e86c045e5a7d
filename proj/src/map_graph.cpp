#include "dtnsim/map_graph.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "dtnsim/error.h"
#include "dtnsim/rng.h"

namespace dtnsim {

MapGraph::MapGraph(std::vector<Vertex> vertices,
                   const std::vector<std::pair<std::int64_t, std::int64_t>>& edges)
    : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end(),
            [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i].id, i).second) {
      throw ConfigError("duplicate vertex id " + std::to_string(vertices_[i].id));
    }
  }
  adjacency_.resize(vertices_.size());
  for (const auto& [a, b] : edges) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia || !ib) {
      throw ConfigError("edge " + std::to_string(a) + "-" + std::to_string(b) +
                        " references missing vertex " + std::to_string(!ia ? a : b));
    }
    if (*ia == *ib) throw ConfigError("self-loop on vertex " + std::to_string(a));
    edges_.emplace_back(std::min(*ia, *ib), std::max(*ia, *ib));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  component_.assign(vertices_.size(), kUnset);
  std::size_t label = 0;
  for (std::size_t s = 0; s < vertices_.size(); ++s) {
    if (component_[s] != kUnset) continue;
    std::vector<std::size_t> stack{s};
    component_[s] = label;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adjacency_[v]) {
        if (component_[w] == kUnset) {
          component_[w] = label;
          stack.push_back(w);
        }
      }
    }
    ++label;
  }
}

std::optional<std::size_t> MapGraph::index_of(std::int64_t id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> MapGraph::vertices_within(Vec2 center, double range) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (distance(vertices_[v].pos, center) <= range) out.push_back(v);
  }
  return out;
}

std::size_t MapGraph::nearest_vertex(Vec2 p) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    double d = distance(vertices_[v].pos, p);
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

bool operator==(const MapGraph& a, const MapGraph& b) {
  if (a.vertices_.size() != b.vertices_.size() || a.edges_ != b.edges_) return false;
  for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
    if (a.vertices_[i].id != b.vertices_[i].id || !(a.vertices_[i].pos == b.vertices_[i].pos)) {
      return false;
    }
  }
  return true;
}

namespace {

template <typename T>
T parse_number(const std::string& tok, int line) {
  T value{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("map: bad number '" + tok + "'", line);
  }
  return value;
}

}  // namespace

MapGraph load_map(std::string_view text) {
  std::vector<MapGraph::Vertex> vertices;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "V") {
      if (tok.size() != 4) throw ConfigError("map: expected 'V <id> <x> <y>'", line_no);
      vertices.push_back({parse_number<std::int64_t>(tok[1], line_no),
                          {parse_number<double>(tok[2], line_no),
                           parse_number<double>(tok[3], line_no)}});
    } else if (tok[0] == "E") {
      if (tok.size() != 3) throw ConfigError("map: expected 'E <id> <id>'", line_no);
      edges.emplace_back(parse_number<std::int64_t>(tok[1], line_no),
                         parse_number<std::int64_t>(tok[2], line_no));
    } else {
      throw ConfigError("map: unknown record '" + tok[0] + "'", line_no);
    }
  }
  return MapGraph(std::move(vertices), edges);
}

std::string save_map(const MapGraph& map) {
  std::string out;
  char buf[128];
  for (std::size_t v = 0; v < map.vertex_count(); ++v) {
    Vec2 p = map.position(v);
    std::snprintf(buf, sizeof buf, "V %lld %.17g %.17g\n",
                  static_cast<long long>(map.id(v)), p.x, p.y);
    out += buf;
  }
  for (const auto& [a, b] : map.edges()) {
    std::snprintf(buf, sizeof buf, "E %lld %lld\n", static_cast<long long>(map.id(a)),
                  static_cast<long long>(map.id(b)));
    out += buf;
  }
  return out;
}

MapGraph generate_airport_map(const AirportMapParams& p, Rng& rng) {
  if (!(p.width > 0.0) || !(p.height > 0.0)) {
    throw ConfigError("airport map: extent must be positive");
  }
  if (!(p.corridor_spacing > 0.0)) {
    throw ConfigError("airport map: corridor spacing must be positive");
  }
  for (Vec2 g : p.gates) {
    if (g.x < 0.0 || g.y < 0.0 || g.x > p.width || g.y > p.height) {
      throw ConfigError("airport map: gate outside the extent");
    }
  }

  std::vector<MapGraph::Vertex> verts;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  auto add_vertex = [&](Vec2 pos) {
    auto id = static_cast<std::int64_t>(verts.size());
    verts.push_back({id, pos});
    return id;
  };
  auto nearest_among = [&](Vec2 pos, std::size_t count) {
    std::int64_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
      double d = distance(verts[i].pos, pos);
      if (d < best_d) {
        best_d = d;
        best = static_cast<std::int64_t>(i);
      }
    }
    return std::pair{best, best_d};
  };

  // Corridor grid.
  const auto nx = static_cast<std::size_t>(std::max(1.0, std::round(p.width / p.corridor_spacing)));
  const auto ny = static_cast<std::size_t>(std::max(1.0, std::round(p.height / p.corridor_spacing)));
  const double sx = p.width / static_cast<double>(nx);
  const double sy = p.height / static_cast<double>(ny);
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      add_vertex({static_cast<double>(i) * sx, static_cast<double>(j) * sy});
    }
  }
  auto grid_id = [&](std::size_t i, std::size_t j) {
    return static_cast<std::int64_t>(j * (nx + 1) + i);
  };
  for (std::size_t j = 0; j <= ny; ++j) {
    for (std::size_t i = 0; i <= nx; ++i) {
      if (i < nx) edges.emplace_back(grid_id(i, j), grid_id(i + 1, j));
      if (j < ny) edges.emplace_back(grid_id(i, j), grid_id(i, j + 1));
    }
  }
  const std::size_t grid_count = verts.size();

  // Concourse spine: the gates in order, extended along the first-to-last
  // gate direction until it leaves the extent.
  std::vector<Vec2> spine = p.gates;
  if (p.gates.size() >= 2) {
    Vec2 a = p.gates.front();
    Vec2 b = p.gates.back();
    double len = distance(a, b);
    if (len > 0.0) {
      Vec2 dir{(b.x - a.x) / len, (b.y - a.y) / len};
      auto inside = [&](Vec2 q) {
        return q.x >= 0.0 && q.y >= 0.0 && q.x <= p.width && q.y <= p.height;
      };
      std::vector<Vec2> head;
      for (int k = 1;; ++k) {
        Vec2 q{a.x - dir.x * p.corridor_spacing * k, a.y - dir.y * p.corridor_spacing * k};
        if (!inside(q)) break;
        head.push_back(q);
      }
      std::reverse(head.begin(), head.end());
      std::vector<Vec2> tail;
      for (int k = 1;; ++k) {
        Vec2 q{b.x + dir.x * p.corridor_spacing * k, b.y + dir.y * p.corridor_spacing * k};
        if (!inside(q)) break;
        tail.push_back(q);
      }
      spine.insert(spine.begin(), head.begin(), head.end());
      spine.insert(spine.end(), tail.begin(), tail.end());
    }
  }
  std::vector<std::int64_t> spine_ids;
  std::vector<std::int64_t> gate_ids;
  for (Vec2 q : spine) {
    auto [near, d] = nearest_among(q, verts.size());
    std::int64_t id = d == 0.0 ? near : add_vertex(q);
    if (d != 0.0) {
      auto [grid_near, gd] = nearest_among(q, grid_count);
      (void)gd;
      edges.emplace_back(id, grid_near);
    }
    if (!spine_ids.empty() && spine_ids.back() != id) edges.emplace_back(spine_ids.back(), id);
    spine_ids.push_back(id);
  }
  for (Vec2 g : p.gates) gate_ids.push_back(nearest_among(g, verts.size()).first);
  const std::size_t backbone_count = verts.size();

  // Shop and restroom spurs, each hanging off the nearest backbone vertex.
  auto add_spurs = [&](std::uint32_t count, Vec2 anchor) {
    for (std::uint32_t k = 0; k < count; ++k) {
      double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
      double radius = rng.uniform(std::min(30.0, p.spur_radius), p.spur_radius);
      Vec2 q{std::clamp(anchor.x + radius * std::cos(angle), 0.0, p.width),
             std::clamp(anchor.y + radius * std::sin(angle), 0.0, p.height)};
      auto [near, d] = nearest_among(q, backbone_count);
      if (d == 0.0) continue;
      edges.emplace_back(add_vertex(q), near);
    }
  };
  if (!p.gates.empty()) {
    add_spurs(p.shops, p.gates[0]);
    add_spurs(p.restrooms, p.gates[std::min<std::size_t>(1, p.gates.size() - 1)]);
  }
  return MapGraph(std::move(verts), edges);
}

namespace {

std::vector<std::size_t> trace(const std::vector<std::size_t>& pred, std::size_t from,
                               std::size_t to) {
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(pred[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<std::vector<std::size_t>> shortest_path(const MapGraph& map, std::size_t from,
                                                      std::size_t to) {
  const std::size_t n = map.vertex_count();
  if (from >= n || to >= n) return std::nullopt;
  if (from == to) return std::vector<std::size_t>{from};
  if (map.components()[from] != map.components()[to]) return std::nullopt;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> pred(n, n);
  std::vector<char> settled(n, 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[from] = 0.0;
  pq.emplace(0.0, from);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == to) break;
    for (std::size_t v : map.neighbors(u)) {
      if (settled[v]) continue;
      double nd = d + map.edge_length(u, v);
      if (nd < dist[v]) {
        dist[v] = nd;
        pred[v] = u;
        pq.emplace(nd, v);
      } else if (nd == dist[v] && pred[v] != u) {
        // Equal length: keep the lexicographically smaller vertex sequence.
        // Both predecessors are settled, so their paths are final. The
        // comparison includes v itself: one candidate may be a prefix of the
        // other when three vertices are colinear.
        auto mine = trace(pred, from, u);
        auto theirs = trace(pred, from, pred[v]);
        mine.push_back(v);
        theirs.push_back(v);
        if (mine < theirs) pred[v] = u;
      }
    }
  }
  return trace(pred, from, to);
}

double path_length(const MapGraph& map, const std::vector<std::size_t>& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += map.edge_length(path[i - 1], path[i]);
  return total;
}

}  // namespace dtnsim
