#include "dtnsim/contacts.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

namespace dtnsim {

std::vector<HostPair> detect_contacts(std::span<const Vec2> positions, double range) {
  std::vector<HostPair> out;
  const std::size_t n = positions.size();
  if (n < 2) return out;
  // Slightly oversized cells so rounding in the division can never push two
  // in-range points more than one cell apart.
  const double cell = range * (1.0 + 1e-9);
  const double r2 = range * range;

  struct Entry {
    std::int64_t cx, cy;
    HostIndex host;
    bool operator<(const Entry& o) const {
      return cx != o.cx ? cx < o.cx : cy != o.cy ? cy < o.cy : host < o.host;
    }
  };
  std::vector<Entry> keyed(n);
  for (std::size_t i = 0; i < n; ++i) {
    keyed[i] = {static_cast<std::int64_t>(std::floor(positions[i].x / cell)),
                static_cast<std::int64_t>(std::floor(positions[i].y / cell)),
                static_cast<HostIndex>(i)};
  }
  std::sort(keyed.begin(), keyed.end());

  // Runs of equal cells: (cx, cy, begin, end).
  struct Run {
    std::int64_t cx, cy;
    std::size_t begin, end;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && keyed[j].cx == keyed[i].cx && keyed[j].cy == keyed[i].cy) ++j;
    runs.push_back({keyed[i].cx, keyed[i].cy, i, j});
    i = j;
  }
  auto find_run = [&](std::int64_t cx, std::int64_t cy) -> const Run* {
    auto it = std::lower_bound(runs.begin(), runs.end(), std::pair{cx, cy},
                               [](const Run& r, const std::pair<std::int64_t, std::int64_t>& k) {
                                 return r.cx != k.first ? r.cx < k.first : r.cy < k.second;
                               });
    return it != runs.end() && it->cx == cx && it->cy == cy ? &*it : nullptr;
  };
  auto check = [&](HostIndex a, HostIndex b) {
    const double dx = positions[a].x - positions[b].x;
    const double dy = positions[a].y - positions[b].y;
    if (dx * dx + dy * dy <= r2) out.push_back(HostPair::of(a, b));
  };

  // Each cell against itself and the four neighbours ahead of it, so every
  // adjacent cell pair is visited once.
  static constexpr std::int64_t kAhead[4][2] = {{0, 1}, {1, -1}, {1, 0}, {1, 1}};
  for (const Run& r : runs) {
    for (std::size_t i = r.begin; i < r.end; ++i) {
      for (std::size_t j = i + 1; j < r.end; ++j) check(keyed[i].host, keyed[j].host);
    }
    for (const auto& d : kAhead) {
      const Run* o = find_run(r.cx + d[0], r.cy + d[1]);
      if (!o) continue;
      for (std::size_t i = r.begin; i < r.end; ++i) {
        for (std::size_t j = o->begin; j < o->end; ++j) check(keyed[i].host, keyed[j].host);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ContactUpdate ContactTracker::update(std::span<const Vec2> positions, double now) {
  std::vector<HostPair> current = detect_contacts(positions, range_);
  ContactUpdate upd;
  std::vector<Contact> next;
  next.reserve(current.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < active_.size() || j < current.size()) {
    if (j == current.size() || (i < active_.size() && active_[i].pair < current[j])) {
      upd.down.push_back(active_[i].pair);
      ++i;
    } else if (i == active_.size() || current[j] < active_[i].pair) {
      upd.up.push_back(current[j]);
      next.push_back({current[j], now});
      ++j;
    } else {
      next.push_back(active_[i]);
      ++i;
      ++j;
    }
  }
  active_ = std::move(next);
  return upd;
}

bool ContactTracker::is_up(HostIndex x, HostIndex y) const {
  HostPair p = HostPair::of(x, y);
  auto it = std::lower_bound(active_.begin(), active_.end(), p,
                             [](const Contact& c, const HostPair& q) { return c.pair < q; });
  return it != active_.end() && it->pair == p;
}

}  // namespace dtnsim
