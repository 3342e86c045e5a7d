#include <doctest.h>

#include <set>

#include "dtnsim/error.h"
#include "dtnsim/simulation.h"
#include "dtnsim/sweep.h"
#include "fixtures.h"
#include "support.h"

using namespace dtnsim;

TEST_CASE("tick count") {
  CHECK(tick_count(14400, 0.1) == 144000);
  CHECK(tick_count(0, 0.1) == 0);
  CHECK(tick_count(1.05, 0.1) == 11);
  CHECK(tick_count(1.0, 0.3) == 4);
}

TEST_CASE("final tick is clamped to the end time") {
  testing::TempDir dir;
  auto c = testing::scenario_with_map(dir, fixtures::kLineMap,
                                      "Scenario.endTime = 1.05\nGroup1.id = a\n");
  Simulation sim(c);
  sim.finish();
  CHECK(sim.ticks_done() == 11);
  CHECK(sim.now() == 1.05);
}

TEST_CASE("a lone stationary host") {
  testing::TempDir dir;
  auto c = testing::scenario_with_map(dir, fixtures::kLineMap,
                                      "Scenario.endTime = 10\nGroup1.id = a\nGroup1.position = 1000,0\n");
  Simulation sim(c);
  int ticks = 0;
  sim.set_observer([&](const Simulation& s) {
    ++ticks;
    CHECK(s.host(0).motion.position == Vec2{1000, 0});
    CHECK(s.last_tick().link_up.empty());
  });
  RunReport r = sim.finish();
  CHECK(ticks == 100);
  CHECK(r.no_messages);
  CHECK(r.created == 0);
}

TEST_CASE("two close hosts link once") {
  testing::TempDir dir;
  auto c = testing::scenario_with_map(dir, "V 0 0 0\nV 1 5 0\nE 0 1\n",
                                      "Scenario.endTime = 5\n"
                                      "Group1.id = a\nGroup1.position = 0,0\n"
                                      "Group2.id = b\nGroup2.position = 5,0\n");
  Simulation sim(c);
  std::size_t ups = 0, downs = 0;
  sim.set_observer([&](const Simulation& s) {
    ups += s.last_tick().link_up.size();
    downs += s.last_tick().link_down.size();
  });
  sim.finish();
  CHECK(ups == 1);
  CHECK(downs == 0);
  CHECK(sim.contacts().is_up(0, 1));
  CHECK(*sim.host(0).encounters.last_met(1) == doctest::Approx(0.1));
}

TEST_CASE("a walk-away aborts the transfer and leaves no copy") {
  testing::TempDir dir;
  auto c = testing::scenario_with_map(dir, fixtures::kLineMap,
                                      "Scenario.endTime = 3\n"
                                      "Interface.range = 10.5\nInterface.bitrate = 1000\n"
                                      "Events.interval = 0.05,0.05\nEvents.sources = A\n"
                                      "Events.destinations = D\n"
                                      "Group1.id = A\nGroup1.position = 0,0\n"
                                      "Group2.id = B\nGroup2.movement = mapRandom\n"
                                      "Group2.position = 0,0\nGroup2.speed = 10,10\n"
                                      "Group3.id = D\nGroup3.position = 1000,0\n");
  Simulation sim(c);
  std::uint64_t abort_tick = 0;
  std::uint64_t start_tick = 0;
  sim.set_observer([&](const Simulation& s) {
    if (!s.last_tick().started.empty() && !start_tick) start_tick = s.ticks_done();
    if (!s.last_tick().aborted.empty() && !abort_tick) abort_tick = s.ticks_done();
  });
  RunReport r = sim.finish();
  CHECK(start_tick == 2);
  // B is 11 m out after tick 11.
  CHECK(abort_tick == 11);
  CHECK(r.aborted == 1);
  CHECK(r.relayed == 0);
  CHECK(sim.host(1).buffer.size() == 0);
  CHECK(sim.transfers().active_count() == 0);
}

TEST_CASE("courier relay matches the oracle schedule") {
  testing::TempDir dir;
  for (const auto& k : fixtures::courier_cases()) {
    CAPTURE(k.router);
    CAPTURE(k.copies);
    auto c = testing::scenario_with_map(dir, fixtures::kLineMap,
                                        fixtures::courier_text(k.router, k.copies, 320));
    auto out = fixtures::run_courier(c, k.delivers);
    CHECK(out.created_ticks == std::vector<std::uint64_t>{451, 901, 1352, 1802, 2253, 2703, 3154});
    if (!k.delivers) {
      CHECK(out.observed.empty());
      continue;
    }
    REQUIRE(out.expected.size() == 4);
    CHECK(out.expected.front().delivered_tick == 2991);
    REQUIRE(out.observed.size() == out.expected.size());
    for (std::size_t i = 0; i < out.expected.size(); ++i) {
      const auto got = out.observed.at(i);
      const auto want = out.expected[i].delivered_tick;
      CHECK(got + 1 >= want);
      CHECK(got <= want + 1);
    }
  }
}

TEST_CASE("epidemic floods a clique in doubling rounds") {
  testing::TempDir dir;
  for (std::uint32_t k : {2u, 3u, 5u, 8u, 13u, 16u}) {
    for (double bitrate : {102400.0, 25600.0}) {
      CAPTURE(k);
      CAPTURE(bitrate);
      auto c = testing::scenario_with_map(dir, fixtures::kLineMap, fixtures::clique_text(k, bitrate));
      auto out = fixtures::run_clique(c, k);
      const auto xfer = oracle::transfer_ticks(10240, bitrate * 0.1);
      CHECK(out.created_tick == 30);
      CHECK(out.full_tick == out.created_tick + fixtures::clique_flood_ticks(k, xfer));
    }
  }
}

TEST_CASE("same seed, same run") {
  auto c = testing::scenario(std::string(airport_scenario_text()),
                             {{"Scenario.endTime", "600"}, {"Scenario.seed", "7"}});
  auto trace = [&] {
    Simulation sim(c);
    std::uint64_t h = 1469598103934665603ull;
    sim.set_observer([&](const Simulation& s) {
      for (const auto& host : s.hosts()) {
        h = mix64(h ^ std::hash<double>{}(host.motion.position.x));
        h = mix64(h ^ std::hash<double>{}(host.motion.position.y));
      }
      h = mix64(h ^ s.contacts().active().size());
    });
    RunReport r = sim.finish();
    return std::pair{h, r};
  };
  auto a = trace();
  auto b = trace();
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  c.seed = 8;
  Simulation other(c);
  CHECK_FALSE(other.finish() == a.second);
}

TEST_CASE("airport smoke run") {
  auto c = testing::scenario(std::string(airport_scenario_text()), {{"Scenario.endTime", "900"}});
  Simulation sim(c);
  CHECK(sim.hosts().size() == 303);
  CHECK(sim.host_of("security", 0) == 248);
  CHECK(sim.router().destinations().members.size() == 15);
  std::size_t max_links = 0;
  sim.set_observer([&](const Simulation& s) {
    max_links = std::max(max_links, s.contacts().active().size());
    // Destinations never buffer messages addressed to themselves.
    for (HostIndex d : s.router().destinations().members) {
      for (const auto& m : s.host(d).buffer.messages()) CHECK(m.destination != d);
    }
  });
  RunReport r = sim.finish();
  CHECK(r.created >= 900 / 35);
  CHECK(r.created <= 900 / 25);
  CHECK(r.router == "snf");
  CHECK(r.security_count == 15);
  CHECK(r.patrol_mode == "mapRandom");
  CHECK(max_links > 100);
  // Every host stays on the map's bounding box.
  for (const auto& h : sim.hosts()) {
    CHECK(h.motion.position.x >= 0);
    CHECK(h.motion.position.x <= 2000);
    CHECK(h.motion.position.y >= 0);
    CHECK(h.motion.position.y <= 1500);
  }
}

TEST_CASE("events without sources create nothing") {
  testing::TempDir dir;
  auto c = testing::scenario_with_map(dir, fixtures::kLineMap,
                                      "Scenario.endTime = 100\nEvents.interval = 1,1\n"
                                      "Group1.id = a\nGroup1.roles = destination-candidate\n");
  RunReport r = run_simulation(c);
  CHECK(r.created == 0);
  CHECK(r.no_messages);
  CHECK(r.delivery_ratio == 0.0);
}

TEST_CASE("sources without destinations are rejected") {
  testing::TempDir dir;
  auto c = testing::scenario_with_map(dir, fixtures::kLineMap,
                                      "Scenario.endTime = 100\nEvents.interval = 1,1\n"
                                      "Group1.id = a\nGroup1.roles = source-candidate\n");
  CHECK_THROWS_AS(Simulation{c}, ConfigError);
}

TEST_CASE("a message to its own source is delivered at once") {
  testing::TempDir dir;
  auto c = testing::scenario_with_map(dir, fixtures::kLineMap,
                                      "Scenario.endTime = 10\nEvents.interval = 1,1\n"
                                      "Router.kind = snf\n"
                                      "Events.sources = a\nEvents.destinations = a\n"
                                      "Group1.id = a\n");
  RunReport r = run_simulation(c);
  CHECK(r.created == 10);
  CHECK(r.delivered == 10);
  CHECK(*r.latency_avg == 0.0);
  CHECK(*r.hopcount_avg == 0.0);
}

TEST_CASE("source resolution") {
  auto c = parse_scenario(airport_scenario_text());
  CHECK(resolve_sources(c) == std::vector<HostIndex>{48, 115});
  c.events->sources = {"gateA", "pedC[3]"};
  CHECK(resolve_sources(c) == std::vector<HostIndex>{0, 185});
  CHECK(resolve_destinations(c).size() == 15);
  CHECK(patrol_mode(c) == "mapRandom");
  apply_patrol(c, "gate-clustered");
  CHECK(patrol_mode(c) == "gate-clustered");
}

TEST_CASE("tokens are conserved in random scenarios") {
  Rng rng(2024);
  std::uint64_t checks = 0;
  std::size_t messages = 0;
  for (int trial = 0; trial < 40; ++trial) {
    testing::TempDir dir;
    std::string map;
    std::string body = fixtures::random_small_scenario(rng, map);
    auto c = testing::scenario_with_map(dir, map, body);
    Simulation sim(c);
    fixtures::TokenAudit audit(c.router.copies);
    sim.set_observer([&](const Simulation& s) { audit.observe(s); });
    sim.finish();
    CAPTURE(body);
    CHECK(audit.violations() == 0);
    checks += audit.checks();
    messages += audit.messages();
  }
  CHECK(messages > 200);
  CHECK(checks > 10000);
}

TEST_CASE("epidemic copies only grow and never exceed the host count") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    testing::TempDir dir;
    std::string map;
    std::string body = fixtures::random_small_scenario(rng, map);
    dir.write("map.txt", map);
    auto c = testing::scenario("Map.file = map.txt\n" + body, {{"Router.kind", "epidemic"}});
    c.base_dir = dir.path();
    Simulation sim(c);
    std::map<MessageId, std::size_t> holders;
    bool ok = true;
    sim.set_observer([&](const Simulation& s) {
      for (const auto& m : s.last_tick().created) holders[m.id] = 0;
      for (auto& [id, prev] : holders) {
        std::size_t n = 0;
        for (const auto& h : s.hosts()) n += h.view().has(id);
        if (n < prev || n > s.hosts().size()) ok = false;
        prev = n;
      }
    });
    sim.finish();
    CHECK(ok);
  }
}
