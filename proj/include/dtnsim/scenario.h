#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtnsim/map_graph.h"
#include "dtnsim/router.h"
#include "dtnsim/traffic.h"
#include "dtnsim/types.h"

namespace dtnsim {

struct ClusterSpec {
  Vec2 center;
  double range = 0.0;

  friend bool operator==(const ClusterSpec&, const ClusterSpec&) = default;
};

struct GroupConfig {
  std::string id;
  std::uint32_t count = 1;
  Movement movement = Movement::stationary;
  /// Fixed start: the host(s) start at the vertex nearest to this point.
  std::optional<Vec2> position;
  /// One or more cluster centres; hosts are split evenly across them in
  /// order (e.g. 15 hosts over 3 centres -> 5/5/5).
  std::vector<ClusterSpec> clusters;
  Range speed;
  Range wait;
  std::uint64_t buffer_bytes = 5'000'000;
  bool source_candidate = false;
  bool destination_candidate = false;
};

struct InterfaceConfig {
  double range = 10.0;
  /// Bytes per second.
  double bitrate = 250'000.0;
};

struct MapSource {
  /// Map file path; empty selects the airport generator.
  std::string file;
  AirportMapParams airport;
  std::uint64_t seed = 1;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  double end_time = 0.0;
  double step = 0.1;
  std::optional<double> ttl;
  MapSource map;
  std::vector<GroupConfig> groups;
  InterfaceConfig iface;
  RouterConfig router;
  std::optional<EventGenConfig> events;
  /// Directory against which a relative Map.file is resolved.
  std::filesystem::path base_dir;

  /// Message TTL; defaults to the run length.
  double message_ttl() const { return ttl.value_or(end_time); }
  std::size_t host_count() const;
  const GroupConfig* find_group(std::string_view id) const;
};

/// `Section.key=value` applied on top of the file, left to right.
struct Override {
  std::string key;
  std::string value;
};

Override parse_override(std::string_view text);

/// Parses and validates a scenario file. Throws ConfigError (with the line
/// number where one applies) on syntax errors, unknown keys, missing
/// required keys and constraint violations.
ScenarioConfig parse_scenario(std::string_view text, std::span<const Override> overrides = {});

/// Canonical scenario text holding every effective value, defaults
/// included. Re-parsing it yields the same configuration.
std::string to_scenario_text(const ScenarioConfig& config);

/// Hex FNV-1a digest of the canonical text.
std::string config_digest(const ScenarioConfig& config);

/// Reads a file into a string; throws ConfigError("file not found: ...").
std::string read_text_file(const std::filesystem::path& path);

}  // namespace dtnsim
