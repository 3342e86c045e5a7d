#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dtnsim/buffer.h"
#include "dtnsim/message.h"
#include "dtnsim/transfer.h"
#include "dtnsim/types.h"

namespace dtnsim {

/// Last time this host met each peer (absent when never met).
class EncounterTable {
 public:
  explicit EncounterTable(std::size_t hosts = 0);

  void record(HostIndex peer, double now);
  std::optional<double> last_met(HostIndex peer) const;
  /// Seconds since the last meeting; +infinity when never met.
  double age(HostIndex peer, double now) const;

 private:
  std::vector<double> last_;
};

/// Sets both hosts' timers for each other to `now`.
void record_encounter(EncounterTable& table_a, EncounterTable& table_b, HostIndex a, HostIndex b,
                      double now);

struct RouterConfig {
  RouterKind kind = RouterKind::epidemic;
  std::uint32_t copies = 6;
  double focus_threshold = 60.0;
};

/// Which hosts count as a message's destination.
struct DestinationSet {
  DestMode mode = DestMode::random_unicast;
  std::vector<HostIndex> members;  // sorted

  bool accepts(const Message& m, HostIndex host) const;
};

/// Read-only view of one host, as seen by the routing decision.
struct HostView {
  HostIndex id = 0;
  const Buffer* buffer = nullptr;
  const EncounterTable* encounters = nullptr;
  /// Message ids absorbed here as a destination, with the tokens absorbed.
  const std::unordered_map<MessageId, std::uint32_t>* delivered = nullptr;

  bool has(MessageId id) const {
    return (buffer && buffer->contains(id)) || (delivered && delivered->count(id));
  }
};

struct TransferRequest {
  HostIndex sender = 0;
  HostIndex receiver = 0;
  MessageId message = 0;
  TransferKind kind = TransferKind::replicate;

  friend bool operator==(const TransferRequest&, const TransferRequest&) = default;
};

/// Protocol logic shared by every host of a run.
///
/// epidemic   : replicate every message the peer lacks.
/// snw-vanilla: a copy with n > 1 tokens hands one token to the peer.
/// snw-binary : a copy with n > 1 tokens hands floor(n/2) and keeps ceil(n/2).
/// snf        : binary spray while n > 1; with one token the copy moves to a
///              peer whose destination timer is fresher by more than the
///              focus threshold.
/// Direct delivery to a destination is always allowed.
class Router {
 public:
  Router(RouterConfig config, DestinationSet destinations);

  const RouterConfig& config() const { return config_; }
  const DestinationSet& destinations() const { return dests_; }

  std::uint32_t initial_tokens() const { return uses_tokens(config_.kind) ? config_.copies : 0; }

  /// What `holder` should do with `copy` toward `peer`, if anything.
  std::optional<TransferKind> decide(const Message& copy, const HostView& holder,
                                     const HostView& peer, double now) const;

  /// Requests for both directions of a fresh contact: a->b then b->a, each
  /// with deliveries first, then the rest in buffer order.
  std::vector<TransferRequest> on_contact(const HostView& a, const HostView& b, double now) const;

  /// Most recent meeting of `table`'s owner with the message destination
  /// (any destination member under anycast); -infinity when never met.
  double last_met_destination(const EncounterTable& table, const Message& m) const;

  /// Tokens after a completed spray: {kept by sender, handed to receiver}.
  std::pair<std::uint32_t, std::uint32_t> split(std::uint32_t tokens) const;

  /// Under token-based routers a delivery hands the whole copy over.
  bool delivery_consumes_copy() const { return uses_tokens(config_.kind); }

  /// True when decisions depend on encounter timers.
  bool uses_encounters() const { return config_.kind == RouterKind::snf; }

 private:
  RouterConfig config_;
  DestinationSet dests_;
};

}  // namespace dtnsim
