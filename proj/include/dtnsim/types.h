#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

namespace dtnsim {

using HostIndex = std::uint32_t;
using MessageId = std::uint64_t;

inline constexpr HostIndex kNoHost = std::numeric_limits<HostIndex>::max();

struct Range {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

enum class Movement { stationary, map_random, shortest_path_map, clustered };
enum class RouterKind { epidemic, snw_vanilla, snw_binary, snf };
enum class DestMode { random_unicast, anycast };

std::string_view to_string(Movement m);
std::string_view to_string(RouterKind k);
std::string_view to_string(DestMode m);

std::optional<Movement> parse_movement(std::string_view s);
std::optional<RouterKind> parse_router_kind(std::string_view s);
std::optional<DestMode> parse_dest_mode(std::string_view s);

inline bool uses_tokens(RouterKind k) { return k != RouterKind::epidemic; }

}  // namespace dtnsim
