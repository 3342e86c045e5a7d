#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dtnsim/buffer.h"
#include "dtnsim/contacts.h"
#include "dtnsim/map_graph.h"
#include "dtnsim/mobility.h"
#include "dtnsim/report.h"
#include "dtnsim/rng.h"
#include "dtnsim/router.h"
#include "dtnsim/scenario.h"
#include "dtnsim/traffic.h"
#include "dtnsim/transfer.h"

namespace dtnsim {

struct Host {
  HostIndex id = 0;
  std::size_t group = 0;
  MovementProfile profile;
  MovementState motion;
  Rng rng;
  Buffer buffer{0, 0};
  EncounterTable encounters;
  /// Messages absorbed here as a destination, with the tokens they carried.
  std::unordered_map<MessageId, std::uint32_t> delivered;

  HostView view() const { return {id, &buffer, &encounters, &delivered}; }
};

struct Delivery {
  MessageId message = 0;
  HostIndex receiver = 0;
  double latency = 0.0;
  bool first = false;
};

/// What happened during the most recent tick.
struct TickEvents {
  std::vector<HostPair> link_up;
  std::vector<HostPair> link_down;
  std::vector<Transfer> started;
  std::vector<Transfer> completed;
  std::vector<Transfer> aborted;
  std::vector<Delivery> deliveries;
  std::vector<Message> created;
};

/// One run of a scenario. Each tick applies, in order: movement, contact
/// detection, transfer progress, routing on contacts, message injection,
/// TTL expiry and the observer hook.
class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& config);

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  std::uint64_t tick_count() const { return ticks_; }
  std::uint64_t ticks_done() const { return tick_; }
  bool done() const { return tick_ >= ticks_; }
  double now() const { return now_; }

  /// Advances one tick. No-op once done().
  void tick();
  /// Runs the remaining ticks and returns the finalized report.
  RunReport finish();
  RunReport report() const;

  void set_observer(std::function<void(const Simulation&)> fn) { observer_ = std::move(fn); }

  const ScenarioConfig& config() const { return config_; }
  const MapGraph& map() const { return map_; }
  const std::vector<Host>& hosts() const { return hosts_; }
  const Host& host(HostIndex i) const { return hosts_[i]; }
  const ContactTracker& contacts() const { return contacts_; }
  const TransferTable& transfers() const { return transfers_; }
  const Router& router() const { return router_; }
  const MetricsRecorder& metrics() const { return metrics_; }
  const TickEvents& last_tick() const { return events_; }
  /// First host index of each group, in config order.
  const std::vector<HostIndex>& group_offsets() const { return group_offset_; }
  HostIndex host_of(std::string_view group, std::uint32_t index) const;

 private:
  struct Link {
    HostIndex peer = 0;
    // Candidate messages for this directed link, checked again when popped.
    std::deque<MessageId> direct;
    std::deque<MessageId> relay;
  };

  void build_map();
  void build_hosts();
  void build_traffic();

  void phase_movement(double prev, double dt);
  void phase_contacts();
  void phase_transfers();
  void phase_routing();
  void phase_inject();
  void phase_expire();

  Link* find_link(HostIndex x, HostIndex p);
  void rebuild_link(HostIndex x, Link& link);
  void enqueue_candidate(HostIndex x, Link& link, const Message& m);
  void on_acquired(HostIndex x, const Message& m);
  void on_lost(HostIndex x, MessageId id);
  void try_send(HostIndex x);
  bool try_start(HostIndex x, HostIndex p, const Message& m, TransferKind kind);
  void complete(const Transfer& t);
  void drop_evicted(HostIndex x, const std::vector<Message>& evicted);

  ScenarioConfig config_;
  MapGraph map_;
  std::optional<PathCache> paths_;
  std::vector<Host> hosts_;
  std::vector<HostIndex> group_offset_;
  std::vector<std::vector<Link>> links_;
  std::vector<Vec2> positions_;
  Router router_;
  TrafficGenerator traffic_ = TrafficGenerator::none();
  ContactTracker contacts_;
  TransferTable transfers_;
  MetricsRecorder metrics_;
  TickEvents events_;
  ContactUpdate pending_update_;
  // Created messages not yet past their TTL, oldest first.
  std::deque<Message> live_;
  std::function<void(const Simulation&)> observer_;

  std::uint64_t ticks_ = 0;
  std::uint64_t tick_ = 0;
  double now_ = 0.0;
  double bytes_per_tick_ = 0.0;
};

/// Builds a Simulation, runs it to the end and returns the report.
RunReport run_simulation(const ScenarioConfig& config);

/// Number of ticks for a run: ceil(end_time / step).
std::uint64_t tick_count(double end_time, double step);

/// Resolved source and destination host lists for a configuration.
std::vector<HostIndex> resolve_sources(const ScenarioConfig& config);
std::vector<HostIndex> resolve_destinations(const ScenarioConfig& config);

/// Label of the destination groups' movement ("mapRandom", "gate-clustered", ...).
std::string patrol_mode(const ScenarioConfig& config);

}  // namespace dtnsim
