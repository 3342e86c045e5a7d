#pragma once

#include <cstdint>

#include "dtnsim/types.h"

namespace dtnsim {

/// Destination marker for anycast messages (any member of the destination
/// group satisfies delivery).
inline constexpr HostIndex kAnycast = kNoHost;

/// One copy of a unicast bundle. All copies of a message share `id`;
/// `tokens` and `hops` are per copy.
struct Message {
  MessageId id = 0;
  HostIndex source = 0;
  HostIndex destination = 0;
  std::uint64_t size = 0;
  double created_at = 0.0;
  double ttl = 0.0;
  std::uint32_t tokens = 0;
  std::uint32_t hops = 0;

  /// Strict: a copy is expired once `now - created_at` exceeds the TTL.
  bool expired(double now) const { return now - created_at > ttl; }
};

}  // namespace dtnsim
