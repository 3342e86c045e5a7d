#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtnsim/message.h"
#include "dtnsim/rng.h"
#include "dtnsim/types.h"

namespace dtnsim {

struct EventGenConfig {
  Range interval{25.0, 35.0};
  std::uint64_t size = 10240;
  /// Host selectors: `group` (every host of the group) or `group[i]`.
  /// Empty means the first host of every group tagged source-candidate.
  std::vector<std::string> sources;
  /// Group ids. Empty means every group tagged destination-candidate.
  std::vector<std::string> destinations;
  DestMode dest_mode = DestMode::random_unicast;
};

/// `now` plus a uniform draw from [interval.min, interval.max].
double next_event_time(Rng& rng, double now, Range interval);

/// HELP-message generator: round-robin over the resolved sources, uniform
/// destination per message (random-unicast) or the whole group (anycast).
class TrafficGenerator {
 public:
  TrafficGenerator(Range interval, std::uint64_t size, std::vector<HostIndex> sources,
                   std::vector<HostIndex> destinations, DestMode mode, std::uint32_t tokens,
                   double ttl, Rng rng);

  /// Generator that never fires.
  static TrafficGenerator none();

  bool active() const { return !sources_.empty() && !destinations_.empty(); }
  double next_time() const { return next_; }

  /// Builds the next message (id, source, destination, tokens) and
  /// schedules the following event.
  Message create_message();

  const std::vector<HostIndex>& sources() const { return sources_; }
  const std::vector<HostIndex>& destinations() const { return destinations_; }

 private:
  Range interval_;
  std::uint64_t size_;
  std::vector<HostIndex> sources_;
  std::vector<HostIndex> destinations_;
  DestMode mode_;
  std::uint32_t tokens_;
  double ttl_;
  Rng rng_;
  double next_ = 0.0;
  MessageId next_id_ = 0;
  std::size_t turn_ = 0;
};

}  // namespace dtnsim
