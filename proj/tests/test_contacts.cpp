#include <doctest.h>

#include <vector>

#include "dtnsim/contacts.h"
#include "dtnsim/rng.h"
#include "oracles.h"

using namespace dtnsim;

TEST_CASE("distance equal to the range is a contact") {
  std::vector<Vec2> p{{0, 0}, {10, 0}};
  CHECK(detect_contacts(p, 10.0) == std::vector<HostPair>{{0, 1}});
  p[1].x = 10.000001;
  CHECK(detect_contacts(p, 10.0).empty());
}

TEST_CASE("contacts are not transitive") {
  std::vector<Vec2> p{{0, 0}, {8, 0}, {16, 0}};
  CHECK(detect_contacts(p, 10.0) == std::vector<HostPair>{{0, 1}, {1, 2}});
}

TEST_CASE("grid detection matches all-pairs checks") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec2> p(300);
    for (auto& v : p) v = {rng.uniform(-500, 1500), rng.uniform(0, 800)};
    // Exact-range and negative-coordinate cases.
    p[1] = {p[0].x + 10.0, p[0].y};
    p[2] = {-10.0, -10.0};
    p[3] = {0.0, 0.0};
    CHECK(detect_contacts(p, 10.0) == oracle::all_pairs(p, 10.0));
  }
}

TEST_CASE("tracker reports transitions once") {
  ContactTracker t(10.0);
  std::vector<Vec2> p{{0, 0}, {5, 0}, {100, 0}};
  auto u = t.update(p, 0.1);
  CHECK(u.up == std::vector<HostPair>{{0, 1}});
  CHECK(u.down.empty());
  CHECK(t.is_up(1, 0));
  CHECK(t.active().at(0).up_since == 0.1);

  u = t.update(p, 0.2);
  CHECK(u.up.empty());
  CHECK(u.down.empty());
  CHECK(t.active().at(0).up_since == 0.1);

  p[2] = {12, 0};
  p[0] = {-20, 0};
  u = t.update(p, 0.3);
  CHECK(u.up == std::vector<HostPair>{{1, 2}});
  CHECK(u.down == std::vector<HostPair>{{0, 1}});
  CHECK_FALSE(t.is_up(0, 1));
}
