#include "dtnsim/scenario.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dtnsim/error.h"
#include "dtnsim/rng.h"

namespace dtnsim {

std::string_view to_string(Movement m) {
  switch (m) {
    case Movement::stationary: return "stationary";
    case Movement::map_random: return "mapRandom";
    case Movement::shortest_path_map: return "shortestPathMap";
    case Movement::clustered: return "clustered";
  }
  return "?";
}

std::string_view to_string(RouterKind k) {
  switch (k) {
    case RouterKind::epidemic: return "epidemic";
    case RouterKind::snw_vanilla: return "snw-vanilla";
    case RouterKind::snw_binary: return "snw-binary";
    case RouterKind::snf: return "snf";
  }
  return "?";
}

std::string_view to_string(DestMode m) {
  return m == DestMode::anycast ? "anycast" : "random-unicast";
}

std::optional<Movement> parse_movement(std::string_view s) {
  if (s == "stationary") return Movement::stationary;
  if (s == "mapRandom" || s == "MapBasedMovement") return Movement::map_random;
  if (s == "shortestPathMap" || s == "ShortestPathMapBasedMovement") {
    return Movement::shortest_path_map;
  }
  if (s == "clustered") return Movement::clustered;
  return std::nullopt;
}

std::optional<RouterKind> parse_router_kind(std::string_view s) {
  if (s == "epidemic") return RouterKind::epidemic;
  if (s == "snw-vanilla") return RouterKind::snw_vanilla;
  if (s == "snw-binary") return RouterKind::snw_binary;
  if (s == "snf") return RouterKind::snf;
  return std::nullopt;
}

std::optional<DestMode> parse_dest_mode(std::string_view s) {
  if (s == "random-unicast") return DestMode::random_unicast;
  if (s == "anycast") return DestMode::anycast;
  return std::nullopt;
}

std::size_t ScenarioConfig::host_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.count;
  return n;
}

const GroupConfig* ScenarioConfig::find_group(std::string_view id) const {
  for (const auto& g : groups) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("file not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

const std::set<std::string> kScenarioKeys = {"name", "seed", "endTime", "timeStep", "ttl"};
const std::set<std::string> kMapKeys = {"file",      "width",    "height",     "spacing", "shops",
                                        "restrooms", "gates",    "spurRadius", "seed"};
const std::set<std::string> kInterfaceKeys = {"range", "bitrate"};
const std::set<std::string> kRouterKeys = {"kind", "copies", "focusThreshold"};
const std::set<std::string> kEventKeys = {"interval", "size", "sources", "destinations",
                                          "destMode"};
const std::set<std::string> kGroupKeys = {"id",    "count", "movement", "position", "cluster",
                                          "speed", "wait",  "buffer",   "roles"};

/// Group section number, or 0 when `section` is not GroupN.
int group_number(std::string_view section) {
  if (section.size() <= 5 || section.substr(0, 5) != "Group") return 0;
  int n = 0;
  auto digits = section.substr(5);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || n < 1) return 0;
  return n;
}

void check_key(const std::string& key, int line) {
  auto dot = key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
    throw ConfigError("expected 'Section.key = value', got '" + key + "'", line);
  }
  std::string section = key.substr(0, dot);
  std::string name = key.substr(dot + 1);
  const std::set<std::string>* known = nullptr;
  if (section == "Scenario") known = &kScenarioKeys;
  else if (section == "Map") known = &kMapKeys;
  else if (section == "Interface") known = &kInterfaceKeys;
  else if (section == "Router") known = &kRouterKeys;
  else if (section == "Events") known = &kEventKeys;
  else if (group_number(section) > 0) known = &kGroupKeys;
  if (!known) throw ConfigError("unknown section '" + section + "'", line);
  if (!known->count(name)) throw ConfigError("unknown key '" + key + "'", line);
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  int line(const std::string& key) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? 0 : it->second.line;
  }
  const std::string* raw(const std::string& key) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? nullptr : &it->second.value;
  }
  const std::map<std::string, Entry>& all() const { return kv_; }

  double number(const std::string& key, double fallback) const {
    const std::string* v = raw(key);
    return v ? to_double(*v, key) : fallback;
  }
  std::uint64_t integer(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = raw(key);
    return v ? to_uint(*v, key, false) : fallback;
  }
  std::uint64_t bytes(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = raw(key);
    return v ? to_uint(*v, key, true) : fallback;
  }
  Range range(const std::string& key, Range fallback) const {
    const std::string* v = raw(key);
    if (!v) return fallback;
    auto parts = split(*v, ',');
    if (parts.size() == 1) {
      double x = to_double(parts[0], key);
      return {x, x};
    }
    if (parts.size() != 2) throw ConfigError(key + ": expected 'min,max'", line(key));
    return {to_double(parts[0], key), to_double(parts[1], key)};
  }
  Vec2 point(const std::string& key, const std::string& text) const {
    auto parts = split(text, ',');
    if (parts.size() != 2) throw ConfigError(key + ": expected 'x,y'", line(key));
    return {to_double(parts[0], key), to_double(parts[1], key)};
  }

  double to_double(const std::string& s, const std::string& key) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError(key + ": expected a number, got '" + s + "'", line(key));
    }
    return v;
  }

  std::uint64_t to_uint(const std::string& s, const std::string& key, bool suffixes) const {
    std::uint64_t mult = 1;
    std::string digits = s;
    if (suffixes && !digits.empty()) {
      switch (digits.back()) {
        case 'k': mult = 1'000; break;
        case 'M': mult = 1'000'000; break;
        case 'G': mult = 1'000'000'000; break;
        default: break;
      }
      if (mult != 1) digits.pop_back();
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ConfigError(key + ": expected a non-negative integer, got '" + s + "'", line(key));
    }
    return v * mult;
  }

 private:
  std::map<std::string, Entry> kv_;
};

std::string unquote(std::string v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Override parse_override(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(text) + "' is not Section.key=value");
  }
  Override o{trim(text.substr(0, eq)), unquote(trim(text.substr(eq + 1)))};
  check_key(o.key, 0);
  return o;
}

ScenarioConfig parse_scenario(std::string_view text, std::span<const Override> overrides) {
  std::map<std::string, Entry> kv;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::string line = trim(raw);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected 'Section.key = value'", line_no);
      std::string key = trim(std::string_view(line).substr(0, eq));
      std::string value = unquote(trim(std::string_view(line).substr(eq + 1)));
      check_key(key, line_no);
      if (kv.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
      kv[key] = {value, line_no};
    }
  }
  for (const Override& o : overrides) {
    check_key(o.key, 0);
    kv[o.key] = {o.value, 0};
  }
  Reader r(std::move(kv));
  ScenarioConfig c;

  if (!r.has("Scenario.endTime")) throw ConfigError("missing required key 'Scenario.endTime'");
  if (const auto* v = r.raw("Scenario.name")) c.name = *v;
  c.seed = r.integer("Scenario.seed", c.seed);
  c.end_time = r.number("Scenario.endTime", 0.0);
  c.step = r.number("Scenario.timeStep", c.step);
  if (r.has("Scenario.ttl")) c.ttl = r.number("Scenario.ttl", 0.0);
  if (!(c.end_time >= 0.0)) throw ConfigError("Scenario.endTime must be >= 0", r.line("Scenario.endTime"));
  if (!(c.step > 0.0)) throw ConfigError("Scenario.timeStep must be > 0", r.line("Scenario.timeStep"));
  if (c.ttl && !(*c.ttl > 0.0)) throw ConfigError("Scenario.ttl must be > 0", r.line("Scenario.ttl"));

  // Map
  if (const auto* f = r.raw("Map.file")) {
    c.map.file = *f;
    for (const auto& [key, e] : r.all()) {
      if (key.rfind("Map.", 0) == 0 && key != "Map.file") {
        throw ConfigError("Map.file cannot be combined with generator key '" + key + "'", e.line);
      }
    }
  }
  auto& ap = c.map.airport;
  ap.width = r.number("Map.width", ap.width);
  ap.height = r.number("Map.height", ap.height);
  ap.corridor_spacing = r.number("Map.spacing", ap.corridor_spacing);
  ap.shops = static_cast<std::uint32_t>(r.integer("Map.shops", ap.shops));
  ap.restrooms = static_cast<std::uint32_t>(r.integer("Map.restrooms", ap.restrooms));
  ap.spur_radius = r.number("Map.spurRadius", ap.spur_radius);
  c.map.seed = r.integer("Map.seed", c.map.seed);
  if (const auto* g = r.raw("Map.gates")) {
    ap.gates.clear();
    for (const auto& item : split(*g, ';')) {
      if (!item.empty()) ap.gates.push_back(r.point("Map.gates", item));
    }
  }
  if (!(ap.width > 0.0) || !(ap.height > 0.0)) {
    throw ConfigError("map extent must be positive", r.line(r.has("Map.width") ? "Map.width" : "Map.height"));
  }
  if (!(ap.corridor_spacing > 0.0)) throw ConfigError("Map.spacing must be > 0", r.line("Map.spacing"));

  // Interface
  c.iface.range = r.number("Interface.range", c.iface.range);
  c.iface.bitrate = r.number("Interface.bitrate", c.iface.bitrate);
  if (!(c.iface.range > 0.0)) throw ConfigError("Interface.range must be > 0", r.line("Interface.range"));
  if (!(c.iface.bitrate > 0.0)) throw ConfigError("Interface.bitrate must be > 0", r.line("Interface.bitrate"));

  // Router
  if (const auto* k = r.raw("Router.kind")) {
    auto kind = parse_router_kind(*k);
    if (!kind) {
      throw ConfigError("Router.kind must be one of epidemic, snw-vanilla, snw-binary, snf",
                        r.line("Router.kind"));
    }
    c.router.kind = *kind;
  }
  c.router.copies = static_cast<std::uint32_t>(r.integer("Router.copies", c.router.copies));
  c.router.focus_threshold = r.number("Router.focusThreshold", c.router.focus_threshold);
  if (c.router.copies < 1) throw ConfigError("Router.copies must be >= 1", r.line("Router.copies"));
  if (!(c.router.focus_threshold >= 0.0)) {
    throw ConfigError("Router.focusThreshold must be >= 0", r.line("Router.focusThreshold"));
  }

  // Groups, ordered by section number.
  std::set<int> numbers;
  for (const auto& [key, e] : r.all()) {
    if (int n = group_number(key.substr(0, key.find('.')))) numbers.insert(n);
  }
  if (numbers.empty()) throw ConfigError("at least one GroupN section is required");
  std::set<std::string> ids;
  for (int n : numbers) {
    const std::string p = "Group" + std::to_string(n) + ".";
    GroupConfig g;
    g.id = r.has(p + "id") ? *r.raw(p + "id") : "group" + std::to_string(n);
    auto count = r.integer(p + "count", 1);
    if (count < 1) throw ConfigError(p + "count must be >= 1", r.line(p + "count"));
    g.count = static_cast<std::uint32_t>(count);
    if (const auto* m = r.raw(p + "movement")) {
      auto mv = parse_movement(*m);
      if (!mv) {
        throw ConfigError(p + "movement must be one of stationary, mapRandom, shortestPathMap, clustered",
                          r.line(p + "movement"));
      }
      g.movement = *mv;
    }
    if (const auto* pos = r.raw(p + "position")) g.position = r.point(p + "position", *pos);
    if (const auto* cl = r.raw(p + "cluster")) {
      for (const auto& item : split(*cl, ';')) {
        if (item.empty()) continue;
        auto parts = split(item, ',');
        if (parts.size() != 3) throw ConfigError(p + "cluster: expected 'x,y,r'", r.line(p + "cluster"));
        ClusterSpec cs{{r.to_double(parts[0], p + "cluster"), r.to_double(parts[1], p + "cluster")},
                       r.to_double(parts[2], p + "cluster")};
        if (!(cs.range >= 0.0)) throw ConfigError(p + "cluster range must be >= 0", r.line(p + "cluster"));
        g.clusters.push_back(cs);
      }
    }
    g.speed = r.range(p + "speed", g.speed);
    g.wait = r.range(p + "wait", g.wait);
    g.buffer_bytes = r.bytes(p + "buffer", g.buffer_bytes);
    if (const auto* roles = r.raw(p + "roles")) {
      for (const auto& role : split(*roles, ',')) {
        if (role == "source-candidate") g.source_candidate = true;
        else if (role == "destination-candidate") g.destination_candidate = true;
        else if (role != "none" && !role.empty()) {
          throw ConfigError(p + "roles: unknown role '" + role + "'", r.line(p + "roles"));
        }
      }
    }
    if (g.speed.min > g.speed.max) throw ConfigError("speed.min > speed.max", r.line(p + "speed"));
    if (g.speed.min < 0.0) throw ConfigError("speed must be >= 0", r.line(p + "speed"));
    if (g.wait.min > g.wait.max) throw ConfigError("wait.min > wait.max", r.line(p + "wait"));
    if (g.wait.min < 0.0) throw ConfigError("wait must be >= 0", r.line(p + "wait"));
    if (g.buffer_bytes == 0) throw ConfigError(p + "buffer must be > 0", r.line(p + "buffer"));
    if (g.movement == Movement::clustered && g.clusters.empty()) {
      throw ConfigError(p + "cluster is required for clustered movement", r.line(p + "movement"));
    }
    if (!ids.insert(g.id).second) throw ConfigError("duplicate group id '" + g.id + "'", r.line(p + "id"));
    c.groups.push_back(std::move(g));
  }

  // Events
  bool any_events = false;
  for (const auto& [key, e] : r.all()) any_events |= key.rfind("Events.", 0) == 0;
  if (any_events) {
    EventGenConfig ev;
    ev.interval = r.range("Events.interval", ev.interval);
    ev.size = r.bytes("Events.size", ev.size);
    if (const auto* s = r.raw("Events.sources")) {
      for (auto& item : split(*s, ',')) {
        if (!item.empty()) ev.sources.push_back(item);
      }
    }
    if (const auto* d = r.raw("Events.destinations")) {
      for (auto& item : split(*d, ',')) {
        if (!item.empty()) ev.destinations.push_back(item);
      }
    }
    if (const auto* m = r.raw("Events.destMode")) {
      auto mode = parse_dest_mode(*m);
      if (!mode) throw ConfigError("Events.destMode must be random-unicast or anycast", r.line("Events.destMode"));
      ev.dest_mode = *mode;
    }
    if (!(ev.interval.min > 0.0) || ev.interval.min > ev.interval.max) {
      throw ConfigError("Events.interval must satisfy 0 < min <= max", r.line("Events.interval"));
    }
    if (ev.size == 0) throw ConfigError("Events.size must be > 0", r.line("Events.size"));
    for (const auto& sel : ev.sources) {
      auto br = sel.find('[');
      std::string gid = sel.substr(0, br);
      const GroupConfig* g = c.find_group(gid);
      if (!g) throw ConfigError("Events.sources: unknown group '" + gid + "'", r.line("Events.sources"));
      if (br != std::string::npos) {
        if (sel.back() != ']') throw ConfigError("Events.sources: bad selector '" + sel + "'", r.line("Events.sources"));
        std::string idx = sel.substr(br + 1, sel.size() - br - 2);
        std::uint32_t i = 0;
        auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
        if (ec != std::errc() || ptr != idx.data() + idx.size() || i >= g->count) {
          throw ConfigError("Events.sources: bad host index in '" + sel + "'", r.line("Events.sources"));
        }
      }
    }
    for (const auto& gid : ev.destinations) {
      if (!c.find_group(gid)) {
        throw ConfigError("Events.destinations: unknown group '" + gid + "'", r.line("Events.destinations"));
      }
    }
    c.events = std::move(ev);
  }
  return c;
}

std::string to_scenario_text(const ScenarioConfig& c) {
  std::string s;
  auto put = [&](const std::string& key, const std::string& value) { s += key + " = " + value + "\n"; };
  auto range = [](Range r) { return fmt(r.min) + "," + fmt(r.max); };
  auto join = [](const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
    return out;
  };
  put("Scenario.name", c.name);
  put("Scenario.seed", std::to_string(c.seed));
  put("Scenario.endTime", fmt(c.end_time));
  put("Scenario.timeStep", fmt(c.step));
  put("Scenario.ttl", fmt(c.message_ttl()));
  if (!c.map.file.empty()) {
    put("Map.file", c.map.file);
  } else {
    const auto& ap = c.map.airport;
    put("Map.width", fmt(ap.width));
    put("Map.height", fmt(ap.height));
    put("Map.spacing", fmt(ap.corridor_spacing));
    put("Map.shops", std::to_string(ap.shops));
    put("Map.restrooms", std::to_string(ap.restrooms));
    put("Map.spurRadius", fmt(ap.spur_radius));
    std::string gates;
    for (std::size_t i = 0; i < ap.gates.size(); ++i) {
      gates += (i ? ";" : "") + fmt(ap.gates[i].x) + "," + fmt(ap.gates[i].y);
    }
    put("Map.gates", gates);
    put("Map.seed", std::to_string(c.map.seed));
  }
  put("Interface.range", fmt(c.iface.range));
  put("Interface.bitrate", fmt(c.iface.bitrate));
  put("Router.kind", std::string(to_string(c.router.kind)));
  put("Router.copies", std::to_string(c.router.copies));
  put("Router.focusThreshold", fmt(c.router.focus_threshold));
  if (c.events) {
    const auto& ev = *c.events;
    put("Events.interval", range(ev.interval));
    put("Events.size", std::to_string(ev.size));
    put("Events.sources", join(ev.sources));
    put("Events.destinations", join(ev.destinations));
    put("Events.destMode", std::string(to_string(ev.dest_mode)));
  }
  for (std::size_t i = 0; i < c.groups.size(); ++i) {
    const auto& g = c.groups[i];
    const std::string p = "Group" + std::to_string(i + 1) + ".";
    put(p + "id", g.id);
    put(p + "count", std::to_string(g.count));
    put(p + "movement", std::string(to_string(g.movement)));
    if (g.position) put(p + "position", fmt(g.position->x) + "," + fmt(g.position->y));
    if (!g.clusters.empty()) {
      std::string cl;
      for (std::size_t k = 0; k < g.clusters.size(); ++k) {
        const auto& cs = g.clusters[k];
        cl += (k ? ";" : "") + fmt(cs.center.x) + "," + fmt(cs.center.y) + "," + fmt(cs.range);
      }
      put(p + "cluster", cl);
    }
    put(p + "speed", range(g.speed));
    put(p + "wait", range(g.wait));
    put(p + "buffer", std::to_string(g.buffer_bytes));
    std::vector<std::string> roles;
    if (g.source_candidate) roles.emplace_back("source-candidate");
    if (g.destination_candidate) roles.emplace_back("destination-candidate");
    put(p + "roles", roles.empty() ? "none" : join(roles));
  }
  return s;
}

std::string config_digest(const ScenarioConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_scenario_text(config))));
  return buf;
}

}  // namespace dtnsim
