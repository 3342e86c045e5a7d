#include "dtnsim/sweep.h"

namespace dtnsim {

namespace {

// Kept identical to scenarios/airport.scen; a test checks the two match.
constexpr std::string_view kAirport = R"SCEN(# Airport emergency-alert scenario: 303 hosts in ten groups.
Scenario.name = airport
Scenario.seed = 1
Scenario.endTime = 14400
Scenario.timeStep = 0.1

# Generated corridor map; the gates sit on the concourse spine.
Map.width = 2000
Map.height = 1500
Map.spacing = 250
Map.gates = 1200,1000;1300,1050;1400,1100
Map.shops = 25
Map.restrooms = 20
Map.spurRadius = 180
Map.seed = 1

Interface.range = 10
Interface.bitrate = 250000

Router.kind = snf
Router.copies = 6
Router.focusThreshold = 60

Events.interval = 25,35
Events.size = 10240
Events.sources = pedA[0],pedB[0]
Events.destinations = security
Events.destMode = random-unicast

Group1.id = gateA
Group1.count = 1
Group1.movement = stationary
Group1.position = 1200,1000
Group1.buffer = 5M

Group2.id = gateB
Group2.count = 1
Group2.movement = stationary
Group2.position = 1300,1050
Group2.buffer = 5M

Group3.id = gateC
Group3.count = 1
Group3.movement = stationary
Group3.position = 1400,1100
Group3.buffer = 5M

Group4.id = shops
Group4.count = 25
Group4.movement = stationary
Group4.cluster = 1200,1000,200
Group4.buffer = 5M

Group5.id = restrooms
Group5.count = 20
Group5.movement = stationary
Group5.cluster = 1300,1050,200
Group5.buffer = 3M

Group6.id = pedA
Group6.count = 67
Group6.movement = clustered
Group6.cluster = 1200,1000,200
Group6.speed = 1,3
Group6.wait = 0,120
Group6.buffer = 5M
Group6.roles = source-candidate

Group7.id = pedB
Group7.count = 67
Group7.movement = clustered
Group7.cluster = 1300,1050,200
Group7.speed = 1,3
Group7.wait = 0,120
Group7.buffer = 5M
Group7.roles = source-candidate

Group8.id = pedC
Group8.count = 66
Group8.movement = clustered
Group8.cluster = 1400,1100,200
Group8.speed = 1,3
Group8.wait = 0,120
Group8.buffer = 5M

Group9.id = security
Group9.count = 15
Group9.movement = mapRandom
Group9.speed = 1,3
Group9.wait = 10,60
Group9.buffer = 25M
Group9.roles = destination-candidate

Group10.id = staff
Group10.count = 40
Group10.movement = shortestPathMap
Group10.speed = 1,3
Group10.wait = 10,60
Group10.buffer = 15M
)SCEN";

SweepSpec base(std::string name) {
  SweepSpec spec;
  spec.name = std::move(name);
  spec.base_text = std::string(kAirport);
  spec.seeds = {1, 2, 3, 4, 5};
  return spec;
}

}  // namespace

std::string_view airport_scenario_text() { return kAirport; }

std::vector<std::string> preset_names() { return {"sim1", "sim2", "sim3"}; }

std::optional<SweepSpec> preset_sweep(std::string_view name) {
  const SweepAxis routers{"Router.kind", {"epidemic", "snf"}};
  if (name == "sim1") {
    SweepSpec spec = base("sim1");
    spec.axes = {routers};
    return spec;
  }
  if (name == "sim2") {
    SweepSpec spec = base("sim2");
    spec.axes = {{"Group9.count", {"10", "11", "12", "13", "14", "15"}}, routers};
    return spec;
  }
  if (name == "sim3") {
    SweepSpec spec = base("sim3");
    spec.axes = {{"patrol", {"mapRandom", "gate-clustered"}}, routers};
    return spec;
  }
  return std::nullopt;
}

}  // namespace dtnsim
