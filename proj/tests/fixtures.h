#pragma once

// Small synthetic scenarios shared by the unit tests and the acceptance
// runner.

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dtnsim/rng.h"
#include "dtnsim/scenario.h"
#include "dtnsim/simulation.h"
#include "oracles.h"

namespace fixtures {

/// Two vertices 1000 m apart joined by one edge.
inline const char* kLineMap = "V 0 0 0\nV 1 1000 0\nE 0 1\n";

inline std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

/// Stationary source A at the left end, stationary destination D at the
/// right end and courier C shuttling between them at 10 m/s without pauses.
inline std::string courier_text(const std::string& router, std::uint32_t copies, double end_time) {
  return "Scenario.name = courier\n"
         "Scenario.endTime = " + fmt(end_time) + "\n"
         "Scenario.timeStep = 0.1\n"
         "Interface.range = 10.5\n"
         "Interface.bitrate = 250000\n"
         "Router.kind = " + router + "\n"
         "Router.copies = " + std::to_string(copies) + "\n"
         "Events.interval = 45.05,45.05\n"
         "Events.size = 10240\n"
         "Events.sources = A\n"
         "Events.destinations = D\n"
         "Group1.id = A\nGroup1.position = 0,0\n"
         "Group2.id = C\nGroup2.movement = mapRandom\nGroup2.position = 0,0\n"
         "Group2.speed = 10,10\nGroup2.wait = 0,0\n"
         "Group3.id = D\nGroup3.position = 1000,0\n";
}

struct CourierCase {
  std::string router;
  std::uint32_t copies;
  bool delivers;
};

inline std::vector<CourierCase> courier_cases() {
  return {{"epidemic", 6, true},    {"snf", 6, true},          {"snf", 1, true},
          {"snw-binary", 6, true},  {"snw-vanilla", 6, true},  {"snw-binary", 1, false},
          {"snw-vanilla", 1, false}};
}

struct CourierOutcome {
  std::vector<oracle::CourierDelivery> expected;
  std::map<dtnsim::MessageId, std::uint64_t> observed;  // id -> delivery tick
  std::vector<std::uint64_t> created_ticks;
};

/// Runs the courier scenario and the oracle schedule side by side.
inline CourierOutcome run_courier(const dtnsim::ScenarioConfig& config, bool delivers) {
  dtnsim::Simulation sim(config);
  CourierOutcome out;
  sim.set_observer([&](const dtnsim::Simulation& s) {
    for (std::size_t i = 0; i < s.last_tick().created.size(); ++i) {
      out.created_ticks.push_back(s.ticks_done());
    }
    for (const auto& d : s.last_tick().deliveries) {
      if (d.first) out.observed[d.message] = s.ticks_done();
    }
  });
  sim.finish();
  const double step = config.step;
  const auto ticks_per_leg =
      static_cast<std::uint64_t>(std::llround(1000.0 / (10.0 * step)));
  const auto xfer = oracle::transfer_ticks(10240.0, config.iface.bitrate * step);
  // Creation ticks from the event times alone: the first tick whose time
  // reaches each multiple of the interval.
  std::vector<std::uint64_t> created;
  for (int i = 1; 45.05 * i <= config.end_time; ++i) {
    created.push_back(static_cast<std::uint64_t>(std::ceil(45.05 * i / step - 1e-9)));
  }
  if (delivers) {
    out.expected = oracle::courier_schedule(created, ticks_per_leg, 1000.0, 10.5, xfer,
                                            sim.tick_count());
  }
  return out;
}

/// Hosts parked on one spot flood a message among themselves; the
/// destination sits out of range so nobody absorbs it.
inline std::string clique_text(std::uint32_t k, double bitrate) {
  return "Scenario.name = clique\n"
         "Scenario.endTime = 8\n"
         "Scenario.timeStep = 0.1\n"
         "Interface.range = 10\n"
         "Interface.bitrate = " + fmt(bitrate) + "\n"
         "Router.kind = epidemic\n"
         "Events.interval = 3,3\n"
         "Events.size = 10240\n"
         "Events.sources = K[0]\n"
         "Events.destinations = D\n"
         "Group1.id = K\nGroup1.count = " + std::to_string(k) + "\nGroup1.position = 0,0\n"
         "Group2.id = D\nGroup2.position = 1000,0\n";
}

struct CliqueOutcome {
  std::uint64_t created_tick = 0;
  std::uint64_t full_tick = 0;  // first tick at which all k hosts hold the message
};

inline CliqueOutcome run_clique(const dtnsim::ScenarioConfig& config, std::uint32_t k) {
  dtnsim::Simulation sim(config);
  CliqueOutcome out;
  sim.set_observer([&](const dtnsim::Simulation& s) {
    if (!s.last_tick().created.empty() && out.created_tick == 0) out.created_tick = s.ticks_done();
    if (out.full_tick || out.created_tick == 0) return;
    std::uint32_t holders = 0;
    for (dtnsim::HostIndex i = 0; i < k; ++i) holders += s.host(i).buffer.contains(0);
    if (holders == k) out.full_tick = s.ticks_done();
  });
  sim.finish();
  return out;
}

/// Ticks from creation to a full flood: one tick before the first send,
/// then one transfer time per doubling round.
inline std::uint64_t clique_flood_ticks(std::uint32_t k, std::uint64_t xfer) {
  std::uint64_t rounds = 0;
  while ((std::uint64_t{1} << rounds) < k) ++rounds;
  return 1 + rounds * xfer;
}

/// Random small scenario on a grid map for token-accounting checks. Buffers
/// are large and the TTL outlasts the run, so no copy is ever dropped.
inline std::string random_small_scenario(dtnsim::Rng& rng, std::string& map_text) {
  const int side = 3 + static_cast<int>(rng.index(4));
  const double spacing = 15.0 + 15.0 * rng.uniform01();
  std::ostringstream map;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      map << "V " << y * side + x << " " << fmt(x * spacing) << " " << fmt(y * spacing) << "\n";
    }
  }
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      const int v = y * side + x;
      if (x + 1 < side) map << "E " << v << " " << v + 1 << "\n";
      if (y + 1 < side) map << "E " << v << " " << v + side << "\n";
    }
  }
  map_text = map.str();

  static const char* kRouters[] = {"snw-vanilla", "snw-binary", "snf"};
  static const char* kMoves[] = {"stationary", "mapRandom", "shortestPathMap", "clustered"};
  const double step = rng.index(2) ? 0.5 : 1.0;
  const double end_time = 100.0 + static_cast<double>(rng.index(101));
  std::ostringstream s;
  s << "Scenario.name = tokens\n"
    << "Scenario.seed = " << rng.next() % 1000000 << "\n"
    << "Scenario.endTime = " << end_time << "\n"
    << "Scenario.timeStep = " << step << "\n"
    << "Interface.range = " << fmt(8.0 + 20.0 * rng.uniform01()) << "\n"
    << "Interface.bitrate = " << 2000 + rng.index(20000) << "\n"
    << "Router.kind = " << kRouters[rng.index(3)] << "\n"
    << "Router.copies = " << 1 + rng.index(16) << "\n"
    << "Router.focusThreshold = " << rng.index(61) << "\n"
    << "Events.interval = " << fmt(end_time / 50.0) << "," << fmt(end_time / 20.0) << "\n"
    << "Events.size = " << 1000 + rng.index(20000) << "\n"
    << "Events.destMode = " << (rng.index(4) == 0 ? "anycast" : "random-unicast") << "\n";
  const std::size_t groups = 2 + rng.index(3);
  std::uint32_t total = 0;
  for (std::size_t g = 1; g <= groups; ++g) {
    const std::uint32_t count = 1 + static_cast<std::uint32_t>(rng.index(5));
    total += count;
    const char* mode = kMoves[rng.index(4)];
    s << "Group" << g << ".id = g" << g << "\n"
      << "Group" << g << ".count = " << count << "\n"
      << "Group" << g << ".movement = " << mode << "\n"
      << "Group" << g << ".speed = 1," << fmt(1.0 + 4.0 * rng.uniform01()) << "\n"
      << "Group" << g << ".wait = 0," << rng.index(10) << "\n"
      << "Group" << g << ".buffer = 50M\n";
    if (std::string(mode) == "clustered") {
      s << "Group" << g << ".cluster = " << fmt(spacing) << "," << fmt(spacing) << ","
        << fmt(spacing * 1.5) << "\n";
    }
    // The first group sources, the last one receives; middle groups may do both.
    std::vector<std::string> roles;
    if (g == 1 || rng.index(4) == 0) roles.emplace_back("source-candidate");
    if (g == groups || rng.index(4) == 0) roles.emplace_back("destination-candidate");
    s << "Group" << g << ".roles = ";
    for (std::size_t i = 0; i < roles.size(); ++i) s << (i ? "," : "") << roles[i];
    s << "\n";
  }
  (void)total;
  return s.str();
}

/// Per-tick check that every live message's tokens are all accounted for:
/// copies in buffers plus tokens absorbed at destinations equal the initial
/// budget, and no message has more copies than tokens.
class TokenAudit {
 public:
  explicit TokenAudit(std::uint32_t budget) : budget_(budget) {}

  void observe(const dtnsim::Simulation& sim) {
    for (const auto& m : sim.last_tick().created) ids_.push_back(m.id);
    for (dtnsim::MessageId id : ids_) {
      std::uint64_t tokens = 0;
      std::uint64_t copies = 0;
      for (const auto& h : sim.hosts()) {
        if (const auto* m = h.buffer.find(id)) {
          tokens += m->tokens;
          ++copies;
          if (m->tokens == 0) ++violations_;
        }
        if (auto it = h.delivered.find(id); it != h.delivered.end()) tokens += it->second;
      }
      ++checks_;
      if (tokens != budget_ || copies > budget_) ++violations_;
    }
  }

  std::uint64_t checks() const { return checks_; }
  std::uint64_t violations() const { return violations_; }
  std::size_t messages() const { return ids_.size(); }

 private:
  std::uint32_t budget_;
  std::vector<dtnsim::MessageId> ids_;
  std::uint64_t checks_ = 0;
  std::uint64_t violations_ = 0;
};

}  // namespace fixtures
