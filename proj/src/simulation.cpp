#include "dtnsim/simulation.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "dtnsim/error.h"

namespace dtnsim {

std::uint64_t tick_count(double end_time, double step) {
  if (!(end_time > 0.0)) return 0;
  // The epsilon keeps end_time = k * step from rounding up to k + 1.
  return static_cast<std::uint64_t>(std::ceil(end_time / step - 1e-9));
}

namespace {

std::vector<HostIndex> group_offsets(const ScenarioConfig& c) {
  std::vector<HostIndex> out;
  HostIndex next = 0;
  for (const auto& g : c.groups) {
    out.push_back(next);
    next += g.count;
  }
  return out;
}

std::size_t group_index(const ScenarioConfig& c, std::string_view id) {
  for (std::size_t i = 0; i < c.groups.size(); ++i) {
    if (c.groups[i].id == id) return i;
  }
  throw ConfigError("unknown group '" + std::string(id) + "'");
}

}  // namespace

std::vector<HostIndex> resolve_sources(const ScenarioConfig& c) {
  std::vector<HostIndex> out;
  if (!c.events) return out;
  const auto offsets = group_offsets(c);
  if (c.events->sources.empty()) {
    for (std::size_t g = 0; g < c.groups.size(); ++g) {
      if (c.groups[g].source_candidate) out.push_back(offsets[g]);
    }
    return out;
  }
  for (const auto& sel : c.events->sources) {
    auto br = sel.find('[');
    std::size_t g = group_index(c, std::string_view(sel).substr(0, br));
    if (br == std::string::npos) {
      for (std::uint32_t i = 0; i < c.groups[g].count; ++i) out.push_back(offsets[g] + i);
    } else {
      out.push_back(offsets[g] + static_cast<HostIndex>(std::stoul(sel.substr(br + 1))));
    }
  }
  return out;
}

std::vector<HostIndex> resolve_destinations(const ScenarioConfig& c) {
  std::vector<HostIndex> out;
  const auto offsets = group_offsets(c);
  auto add_group = [&](std::size_t g) {
    for (std::uint32_t i = 0; i < c.groups[g].count; ++i) out.push_back(offsets[g] + i);
  };
  if (c.events && !c.events->destinations.empty()) {
    for (const auto& id : c.events->destinations) add_group(group_index(c, id));
  } else {
    for (std::size_t g = 0; g < c.groups.size(); ++g) {
      if (c.groups[g].destination_candidate) add_group(g);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string patrol_mode(const ScenarioConfig& c) {
  std::vector<std::string> ids;
  if (c.events && !c.events->destinations.empty()) {
    ids = c.events->destinations;
  } else {
    for (const auto& g : c.groups) {
      if (g.destination_candidate) ids.push_back(g.id);
    }
  }
  std::set<std::string> modes;
  for (const auto& id : ids) {
    const GroupConfig* g = c.find_group(id);
    if (!g) continue;
    modes.insert(g->movement == Movement::clustered ? "gate-clustered"
                                                    : std::string(to_string(g->movement)));
  }
  if (modes.empty()) return "none";
  if (modes.size() > 1) return "mixed";
  return *modes.begin();
}

Simulation::Simulation(const ScenarioConfig& config)
    : config_(config),
      router_(config.router, DestinationSet{config.events ? config.events->dest_mode
                                                          : DestMode::random_unicast,
                                            resolve_destinations(config)}),
      contacts_(config.iface.range),
      transfers_(config.host_count()) {
  ticks_ = dtnsim::tick_count(config_.end_time, config_.step);
  build_map();
  build_hosts();
  build_traffic();
}

void Simulation::build_map() {
  if (!config_.map.file.empty()) {
    std::filesystem::path p = config_.map.file;
    if (p.is_relative() && !config_.base_dir.empty()) p = config_.base_dir / p;
    map_ = load_map(read_text_file(p));
  } else {
    Rng rng = Rng::substream(config_.map.seed, "map");
    map_ = generate_airport_map(config_.map.airport, rng);
  }
  if (map_.vertex_count() == 0) throw ConfigError("map has no vertices");
  paths_.emplace(map_);
}

void Simulation::build_hosts() {
  group_offset_ = dtnsim::group_offsets(config_);
  const std::size_t n = config_.host_count();
  hosts_.reserve(n);
  for (std::size_t g = 0; g < config_.groups.size(); ++g) {
    const GroupConfig& gc = config_.groups[g];
    for (std::uint32_t i = 0; i < gc.count; ++i) {
      Host h;
      h.id = static_cast<HostIndex>(hosts_.size());
      h.group = g;
      h.rng = Rng::substream(config_.seed, "host:" + gc.id, i);
      h.buffer = Buffer(gc.buffer_bytes, h.id);
      h.encounters = EncounterTable(n);
      h.profile.mode = gc.movement;
      h.profile.speed = gc.speed;
      h.profile.wait = gc.wait;
      if (!gc.clusters.empty()) {
        // Hosts are split evenly across the centres in order.
        const std::size_t k = gc.clusters.size();
        const ClusterSpec& cs = gc.clusters[i * k / gc.count];
        h.profile.cluster_center = cs.center;
        h.profile.cluster_range = cs.range;
      }
      h.profile.admissible = admissible_vertices(map_, gc.movement, h.profile.cluster_center,
                                                 h.profile.cluster_range);
      if (h.profile.admissible.empty()) {
        throw ConfigError("group '" + gc.id + "': no map vertex within the cluster range");
      }
      std::size_t start = gc.position ? map_.nearest_vertex(*gc.position)
                                      : h.profile.admissible[h.rng.index(h.profile.admissible.size())];
      h.motion = place_host(map_, h.profile, start);
      hosts_.push_back(std::move(h));
    }
  }
  links_.assign(n, {});
  positions_.resize(n);
  for (std::size_t i = 0; i < n; ++i) positions_[i] = hosts_[i].motion.position;
}

void Simulation::build_traffic() {
  if (!config_.events) return;
  auto sources = resolve_sources(config_);
  auto dests = router_.destinations().members;
  if (!sources.empty() && dests.empty()) {
    throw ConfigError("events have sources but the destination set is empty");
  }
  const auto& ev = *config_.events;
  traffic_ = TrafficGenerator(ev.interval, ev.size, std::move(sources), std::move(dests),
                              ev.dest_mode, router_.initial_tokens(), config_.message_ttl(),
                              Rng::substream(config_.seed, "traffic"));
}

HostIndex Simulation::host_of(std::string_view group, std::uint32_t index) const {
  return group_offset_[group_index(config_, group)] + index;
}

void Simulation::tick() {
  if (done()) return;
  const double prev = now_;
  ++tick_;
  now_ = std::min(static_cast<double>(tick_) * config_.step, config_.end_time);
  // Every tick but a clamped final one lasts exactly one step.
  const double dt = std::min(config_.step, config_.end_time - prev);
  bytes_per_tick_ = config_.iface.bitrate * dt;
  events_ = TickEvents{};

  phase_movement(prev, dt);
  phase_contacts();
  phase_transfers();
  phase_routing();
  phase_inject();
  phase_expire();
  if (observer_) observer_(*this);
}

RunReport Simulation::finish() {
  while (!done()) tick();
  return report();
}

RunReport Simulation::report() const {
  RunReport r = metrics_.finalize();
  r.scenario = config_.name;
  r.router = std::string(to_string(config_.router.kind));
  r.seed = config_.seed;
  r.security_count = static_cast<std::uint32_t>(router_.destinations().members.size());
  r.patrol_mode = patrol_mode(config_);
  r.config_digest = config_digest(config_);
  return r;
}

void Simulation::phase_movement(double prev, double dt) {
  for (std::size_t i = 0; i < hosts_.size(); ++i) {
    Host& h = hosts_[i];
    step_host(h.motion, h.profile, *paths_, prev, dt, h.rng);
    positions_[i] = h.motion.position;
  }
}

void Simulation::phase_contacts() {
  pending_update_ = contacts_.update(positions_, now_);
  for (const HostPair& p : pending_update_.down) {
    auto drop = [&](HostIndex x, HostIndex y) {
      auto& ls = links_[x];
      ls.erase(std::remove_if(ls.begin(), ls.end(), [&](const Link& l) { return l.peer == y; }),
               ls.end());
    };
    drop(p.a, p.b);
    drop(p.b, p.a);
  }
  for (const HostPair& p : pending_update_.up) {
    auto add = [&](HostIndex x, HostIndex y) {
      auto& ls = links_[x];
      auto it = std::lower_bound(ls.begin(), ls.end(), y,
                                 [](const Link& l, HostIndex v) { return l.peer < v; });
      Link l;
      l.peer = y;
      ls.insert(it, std::move(l));
    };
    add(p.a, p.b);
    add(p.b, p.a);
  }
  events_.link_up = pending_update_.up;
  events_.link_down = pending_update_.down;
}

void Simulation::phase_transfers() {
  auto progress = progress_transfers(transfers_, contacts_, bytes_per_tick_,
                                     [&](const Transfer& t) {
                                       return hosts_[t.sender].buffer.contains(t.message);
                                     });
  for (const Transfer& t : progress.aborted) {
    metrics_.aborted();
    events_.aborted.push_back(t);
    // Other holders skipped this message while it was in flight.
    for (const Link& l : links_[t.receiver]) {
      if (const Message* m = hosts_[l.peer].buffer.find(t.message)) {
        if (Link* back = find_link(l.peer, t.receiver)) enqueue_candidate(l.peer, *back, *m);
      }
    }
  }
  for (const Transfer& t : progress.completed) complete(t);
}

void Simulation::complete(const Transfer& t) {
  Host& s = hosts_[t.sender];
  Host& r = hosts_[t.receiver];
  Message* copy = s.buffer.find(t.message);
  if (!copy) {
    metrics_.aborted();
    events_.aborted.push_back(t);
    return;
  }
  metrics_.relayed();
  events_.completed.push_back(t);

  if (t.kind == TransferKind::deliver) {
    const double latency = now_ - copy->created_at;
    const bool first = metrics_.delivered(copy->id, latency, copy->hops + 1);
    events_.deliveries.push_back({copy->id, t.receiver, latency, first});
    if (router_.delivery_consumes_copy()) {
      r.delivered[copy->id] += copy->tokens;
      s.buffer.remove(t.message);
      on_lost(t.sender, t.message);
    } else {
      r.delivered.try_emplace(copy->id, 0);
    }
    return;
  }

  if (r.view().has(t.message)) {
    metrics_.aborted();
    events_.aborted.push_back(t);
    return;
  }
  Message out = *copy;
  out.hops += 1;
  std::uint32_t keep = copy->tokens;
  if (t.kind == TransferKind::spray) {
    auto [k, give] = router_.split(copy->tokens);
    if (give == 0) {
      metrics_.aborted();
      events_.aborted.push_back(t);
      return;
    }
    keep = k;
    out.tokens = give;
  }
  auto admission = r.buffer.enqueue(out);
  if (!admission.admitted) {
    metrics_.aborted();
    events_.aborted.push_back(t);
    return;
  }
  drop_evicted(t.receiver, admission.evicted);
  switch (t.kind) {
    case TransferKind::spray:
      // `copy` may have moved if the sender's buffer changed; look it up again.
      s.buffer.find(t.message)->tokens = keep;
      break;
    case TransferKind::forward:
      s.buffer.remove(t.message);
      on_lost(t.sender, t.message);
      break;
    default:
      break;
  }
  on_acquired(t.receiver, out);
}

void Simulation::drop_evicted(HostIndex x, const std::vector<Message>& evicted) {
  for (const Message& m : evicted) {
    metrics_.dropped();
    on_lost(x, m.id);
  }
}

Simulation::Link* Simulation::find_link(HostIndex x, HostIndex p) {
  auto& ls = links_[x];
  auto it = std::lower_bound(ls.begin(), ls.end(), p,
                             [](const Link& l, HostIndex v) { return l.peer < v; });
  return it != ls.end() && it->peer == p ? &*it : nullptr;
}

void Simulation::enqueue_candidate(HostIndex x, Link& link, const Message& m) {
  const Host& peer = hosts_[link.peer];
  if (peer.view().has(m.id)) return;
  if (!router_.decide(m, hosts_[x].view(), peer.view(), now_)) return;
  if (router_.destinations().accepts(m, link.peer)) {
    link.direct.push_back(m.id);
  } else {
    link.relay.push_back(m.id);
  }
}

void Simulation::rebuild_link(HostIndex x, Link& link) {
  link.direct.clear();
  link.relay.clear();
  for (const Message& m : hosts_[x].buffer.messages()) enqueue_candidate(x, link, m);
}

void Simulation::on_acquired(HostIndex x, const Message& m) {
  for (Link& l : links_[x]) enqueue_candidate(x, l, m);
}

void Simulation::on_lost(HostIndex x, MessageId id) {
  for (const Link& l : links_[x]) {
    if (const Message* m = hosts_[l.peer].buffer.find(id)) {
      if (Link* back = find_link(l.peer, x)) enqueue_candidate(l.peer, *back, *m);
    }
  }
}

void Simulation::phase_routing() {
  const auto& up = pending_update_.up;
  for (const HostPair& p : up) {
    record_encounter(hosts_[p.a].encounters, hosts_[p.b].encounters, p.a, p.b, now_);
  }
  if (router_.uses_encounters()) {
    // Fresh timers change focus decisions on every link touching either host.
    std::set<HostIndex> touched;
    for (const HostPair& p : up) {
      touched.insert(p.a);
      touched.insert(p.b);
    }
    std::set<std::pair<HostIndex, HostIndex>> redo;
    for (HostIndex h : touched) {
      for (const Link& l : links_[h]) {
        redo.insert({h, l.peer});
        redo.insert({l.peer, h});
      }
    }
    for (auto [x, p] : redo) {
      if (Link* l = find_link(x, p)) rebuild_link(x, *l);
    }
  } else {
    for (const HostPair& p : up) {
      if (Link* l = find_link(p.a, p.b)) rebuild_link(p.a, *l);
      if (Link* l = find_link(p.b, p.a)) rebuild_link(p.b, *l);
    }
  }
  for (HostIndex x = 0; x < hosts_.size(); ++x) {
    if (!links_[x].empty() && !transfers_.busy(x)) try_send(x);
  }
}

bool Simulation::try_start(HostIndex x, HostIndex p, const Message& m, TransferKind kind) {
  const Buffer* rb = kind == TransferKind::deliver ? nullptr : &hosts_[p].buffer;
  if (start_transfer(transfers_, contacts_, rb, x, p, m, kind, now_) != StartStatus::started) {
    return false;
  }
  events_.started.push_back(*transfers_.outgoing(x));
  return true;
}

void Simulation::try_send(HostIndex x) {
  const Host& h = hosts_[x];
  // Pops candidates from one queue until a transfer starts. Stale entries
  // are discarded; entries already in flight to the peer are kept.
  auto drain = [&](Link& l, std::deque<MessageId>& q) -> bool {
    for (std::size_t i = 0; i < q.size();) {
      const MessageId id = q[i];
      const Message* m = h.buffer.find(id);
      const Host& peer = hosts_[l.peer];
      if (!m || peer.view().has(id)) {
        q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      if (transfers_.in_flight(l.peer, id)) {
        ++i;
        continue;
      }
      auto kind = router_.decide(*m, h.view(), peer.view(), now_);
      q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
      if (!kind) continue;
      HostIndex target = l.peer;
      if (*kind == TransferKind::forward) {
        // A single-token copy goes to the peer that met the destination most
        // recently; ties go to the lowest index.
        double best = router_.last_met_destination(peer.encounters, *m);
        for (const Link& other : links_[x]) {
          if (other.peer == l.peer) continue;
          const Host& q2 = hosts_[other.peer];
          if (q2.view().has(id) || transfers_.in_flight(other.peer, id)) continue;
          if (router_.decide(*m, h.view(), q2.view(), now_) != TransferKind::forward) continue;
          if (!q2.buffer.can_admit(*m)) continue;
          const double t = router_.last_met_destination(q2.encounters, *m);
          if (t > best || (t == best && other.peer < target)) {
            best = t;
            target = other.peer;
          }
        }
      }
      if (try_start(x, target, *m, *kind)) return true;
    }
    return false;
  };
  for (Link& l : links_[x]) {
    if (!l.direct.empty() && drain(l, l.direct)) return;
  }
  for (Link& l : links_[x]) {
    if (!l.relay.empty() && drain(l, l.relay)) return;
  }
}

void Simulation::phase_inject() {
  while (traffic_.active() && traffic_.next_time() <= now_) {
    Message m = traffic_.create_message();
    metrics_.created(m.id);
    events_.created.push_back(m);
    live_.push_back(m);
    Host& src = hosts_[m.source];
    if (router_.destinations().accepts(m, m.source)) {
      metrics_.delivered(m.id, 0.0, 0);
      events_.deliveries.push_back({m.id, m.source, 0.0, true});
      src.delivered[m.id] += m.tokens;
      continue;
    }
    auto admission = src.buffer.enqueue(m);
    drop_evicted(m.source, admission.evicted);
    if (admission.admitted) on_acquired(m.source, m);
  }
}

void Simulation::phase_expire() {
  // The TTL is scenario-wide, so copies expire in creation order and the
  // buffers only need scanning when the oldest live message runs out.
  bool due = false;
  while (!live_.empty() && now_ - live_.front().created_at > live_.front().ttl) {
    live_.pop_front();
    due = true;
  }
  if (!due) return;
  for (Host& h : hosts_) {
    if (h.buffer.size() == 0) continue;
    for (std::size_t n = h.buffer.expire(now_).size(); n > 0; --n) metrics_.expired();
  }
}

RunReport run_simulation(const ScenarioConfig& config) {
  Simulation sim(config);
  return sim.finish();
}

}  // namespace dtnsim
