#pragma once

#include <compare>
#include <span>
#include <vector>

#include "dtnsim/map_graph.h"
#include "dtnsim/types.h"

namespace dtnsim {

/// Unordered host pair stored canonically (a < b).
struct HostPair {
  HostIndex a = 0;
  HostIndex b = 0;

  static HostPair of(HostIndex x, HostIndex y) { return x < y ? HostPair{x, y} : HostPair{y, x}; }
  friend auto operator<=>(const HostPair&, const HostPair&) = default;
};

struct Contact {
  HostPair pair;
  double up_since = 0.0;
};

/// All pairs with distance <= range (closed threshold), sorted. Uses a
/// uniform grid with cell size equal to the range.
std::vector<HostPair> detect_contacts(std::span<const Vec2> positions, double range);

struct ContactUpdate {
  std::vector<HostPair> up;
  std::vector<HostPair> down;
};

/// Tracks the active contact set across ticks and reports link transitions.
class ContactTracker {
 public:
  explicit ContactTracker(double range) : range_(range) {}

  ContactUpdate update(std::span<const Vec2> positions, double now);

  const std::vector<Contact>& active() const { return active_; }
  bool is_up(HostIndex x, HostIndex y) const;
  double range() const { return range_; }

 private:
  double range_;
  std::vector<Contact> active_;
};

}  // namespace dtnsim
