#include "dtnsim/router.h"

#include <algorithm>
#include <limits>

namespace dtnsim {

namespace {
constexpr double kNever = -std::numeric_limits<double>::infinity();
}

EncounterTable::EncounterTable(std::size_t hosts) : last_(hosts, kNever) {}

void EncounterTable::record(HostIndex peer, double now) {
  if (peer >= last_.size()) last_.resize(peer + 1, kNever);
  last_[peer] = std::max(last_[peer], now);
}

std::optional<double> EncounterTable::last_met(HostIndex peer) const {
  if (peer >= last_.size() || last_[peer] == kNever) return std::nullopt;
  return last_[peer];
}

double EncounterTable::age(HostIndex peer, double now) const {
  auto t = last_met(peer);
  return t ? now - *t : std::numeric_limits<double>::infinity();
}

void record_encounter(EncounterTable& table_a, EncounterTable& table_b, HostIndex a, HostIndex b,
                      double now) {
  table_a.record(b, now);
  table_b.record(a, now);
}

bool DestinationSet::accepts(const Message& m, HostIndex host) const {
  if (mode == DestMode::anycast || m.destination == kAnycast) {
    return std::binary_search(members.begin(), members.end(), host);
  }
  return host == m.destination;
}

Router::Router(RouterConfig config, DestinationSet destinations)
    : config_(config), dests_(std::move(destinations)) {
  std::sort(dests_.members.begin(), dests_.members.end());
}

double Router::last_met_destination(const EncounterTable& table, const Message& m) const {
  if (dests_.mode == DestMode::anycast || m.destination == kAnycast) {
    double best = kNever;
    for (HostIndex d : dests_.members) {
      if (auto t = table.last_met(d)) best = std::max(best, *t);
    }
    return best;
  }
  return table.last_met(m.destination).value_or(kNever);
}

std::pair<std::uint32_t, std::uint32_t> Router::split(std::uint32_t tokens) const {
  if (tokens <= 1) return {tokens, 0};
  if (config_.kind == RouterKind::snw_vanilla) return {tokens - 1, 1};
  const std::uint32_t give = tokens / 2;
  return {tokens - give, give};
}

std::optional<TransferKind> Router::decide(const Message& copy, const HostView& holder,
                                           const HostView& peer, double now) const {
  if (peer.has(copy.id)) return std::nullopt;
  if (dests_.accepts(copy, peer.id)) return TransferKind::deliver;
  switch (config_.kind) {
    case RouterKind::epidemic:
      return TransferKind::replicate;
    case RouterKind::snw_vanilla:
    case RouterKind::snw_binary:
      if (copy.tokens > 1) return TransferKind::spray;
      return std::nullopt;
    case RouterKind::snf: {
      if (copy.tokens > 1) return TransferKind::spray;
      if (!holder.encounters || !peer.encounters) return std::nullopt;
      const double holder_age = now - last_met_destination(*holder.encounters, copy);
      const double peer_age = now - last_met_destination(*peer.encounters, copy);
      if (peer_age + config_.focus_threshold < holder_age) return TransferKind::forward;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<TransferRequest> Router::on_contact(const HostView& a, const HostView& b,
                                                double now) const {
  std::vector<TransferRequest> out;
  auto one_way = [&](const HostView& from, const HostView& to) {
    if (!from.buffer) return;
    std::vector<TransferRequest> rest;
    for (const Message& m : from.buffer->messages()) {
      auto kind = decide(m, from, to, now);
      if (!kind) continue;
      TransferRequest req{from.id, to.id, m.id, *kind};
      if (*kind == TransferKind::deliver) {
        out.push_back(req);
      } else {
        rest.push_back(req);
      }
    }
    out.insert(out.end(), rest.begin(), rest.end());
  };
  one_way(a, b);
  one_way(b, a);
  return out;
}

}  // namespace dtnsim
