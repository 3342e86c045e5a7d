#include <doctest.h>

#include <cmath>

#include "dtnsim/buffer.h"
#include "dtnsim/router.h"

using namespace dtnsim;

namespace {

Message msg(MessageId id, HostIndex source, HostIndex dest, std::uint32_t tokens = 0) {
  Message m;
  m.id = id;
  m.source = source;
  m.destination = dest;
  m.size = 100;
  m.ttl = 1e9;
  m.tokens = tokens;
  return m;
}

struct Node {
  HostIndex id;
  Buffer buffer;
  EncounterTable enc{8};
  std::unordered_map<MessageId, std::uint32_t> delivered;

  explicit Node(HostIndex i) : id(i), buffer(1'000'000, i) {}
  HostView view() const { return {id, &buffer, &enc, &delivered}; }
};

Router make(RouterKind kind, std::uint32_t copies = 6, double threshold = 60.0) {
  return Router({kind, copies, threshold}, {DestMode::random_unicast, {7}});
}

}  // namespace

TEST_CASE("encounter timers") {
  EncounterTable t(4);
  CHECK(std::isinf(t.age(2, 10.0)));
  CHECK_FALSE(t.last_met(2));
  t.record(2, 50.0);
  CHECK(t.age(2, 90.0) == 40.0);
  t.record(2, 90.0);
  CHECK(*t.last_met(2) == 90.0);
  EncounterTable a(4), b(4);
  record_encounter(a, b, 0, 1, 12.5);
  CHECK(*a.last_met(1) == 12.5);
  CHECK(*b.last_met(0) == 12.5);
}

TEST_CASE("epidemic sends only what the peer lacks") {
  Router r = make(RouterKind::epidemic);
  Node a(0), b(1);
  a.buffer.enqueue(msg(1, 0, 7));
  a.buffer.enqueue(msg(2, 0, 7));
  b.buffer.enqueue(msg(2, 0, 7));
  auto reqs = r.on_contact(a.view(), b.view(), 0.0);
  REQUIRE(reqs.size() == 1);
  CHECK(reqs[0] == TransferRequest{0, 1, 1, TransferKind::replicate});
  CHECK(r.initial_tokens() == 0);
  CHECK_FALSE(r.delivery_consumes_copy());
}

TEST_CASE("absorbed messages are not offered again") {
  Router r = make(RouterKind::epidemic);
  Node a(0), d(7);
  a.buffer.enqueue(msg(1, 0, 7));
  d.delivered[1] = 0;
  CHECK_FALSE(r.decide(*a.buffer.find(1), a.view(), d.view(), 0.0));
}

TEST_CASE("token splits") {
  CHECK(make(RouterKind::snw_binary).split(8) == std::pair<std::uint32_t, std::uint32_t>{4, 4});
  CHECK(make(RouterKind::snw_binary).split(5) == std::pair<std::uint32_t, std::uint32_t>{3, 2});
  CHECK(make(RouterKind::snw_vanilla).split(8) == std::pair<std::uint32_t, std::uint32_t>{7, 1});
  CHECK(make(RouterKind::snf).split(2) == std::pair<std::uint32_t, std::uint32_t>{1, 1});
  CHECK(make(RouterKind::snw_binary).split(1) == std::pair<std::uint32_t, std::uint32_t>{1, 0});
  CHECK(make(RouterKind::snf, 16).initial_tokens() == 16);
}

TEST_CASE("spray and wait stops at one token") {
  for (auto kind : {RouterKind::snw_vanilla, RouterKind::snw_binary}) {
    Router r = make(kind);
    Node a(0), b(1);
    a.buffer.enqueue(msg(1, 0, 7, 1));
    a.buffer.enqueue(msg(2, 0, 7, 3));
    auto reqs = r.on_contact(a.view(), b.view(), 0.0);
    REQUIRE(reqs.size() == 1);
    CHECK(reqs[0] == TransferRequest{0, 1, 2, TransferKind::spray});
  }
}

TEST_CASE("single-copy spray still delivers directly") {
  Router r = make(RouterKind::snw_vanilla, 1);
  Node a(0), d(7);
  a.buffer.enqueue(msg(1, 0, 7, 1));
  CHECK(r.decide(*a.buffer.find(1), a.view(), d.view(), 0.0) == TransferKind::deliver);
}

TEST_CASE("focus forwards toward fresher destination timers") {
  Router r = make(RouterKind::snf, 6, 60.0);
  Node a(0), b(1);
  a.buffer.enqueue(msg(1, 0, 7, 1));
  const Message& m = *a.buffer.find(1);

  // Holder never met the destination, peer met it 20 s ago.
  b.enc.record(7, 80.0);
  CHECK(r.decide(m, a.view(), b.view(), 100.0) == TransferKind::forward);

  // Ages 100 vs 80: not better by more than the threshold.
  a.enc.record(7, 0.0);
  b.enc = EncounterTable(8);
  b.enc.record(7, 20.0);
  CHECK_FALSE(r.decide(m, a.view(), b.view(), 100.0));

  // Ages 100 vs 39.
  b.enc.record(7, 61.0);
  CHECK(r.decide(m, a.view(), b.view(), 100.0) == TransferKind::forward);

  // Neither has met it.
  Node c(2), e(3);
  c.buffer.enqueue(msg(1, 0, 7, 1));
  CHECK_FALSE(r.decide(*c.buffer.find(1), c.view(), e.view(), 100.0));
}

TEST_CASE("focus sprays while it has spare tokens") {
  Router r = make(RouterKind::snf);
  Node a(0), b(1);
  a.buffer.enqueue(msg(1, 0, 7, 4));
  CHECK(r.decide(*a.buffer.find(1), a.view(), b.view(), 0.0) == TransferKind::spray);
  CHECK(r.uses_encounters());
}

TEST_CASE("deliveries come first in both directions") {
  Router r = make(RouterKind::epidemic);
  Node a(0), d(7);
  a.buffer.enqueue(msg(1, 0, 3));
  a.buffer.enqueue(msg(2, 0, 7));
  d.buffer.enqueue(msg(3, 7, 5));
  auto reqs = r.on_contact(a.view(), d.view(), 0.0);
  REQUIRE(reqs.size() == 3);
  CHECK(reqs[0] == TransferRequest{0, 7, 2, TransferKind::deliver});
  CHECK(reqs[1] == TransferRequest{0, 7, 1, TransferKind::replicate});
  CHECK(reqs[2] == TransferRequest{7, 0, 3, TransferKind::replicate});
}

TEST_CASE("anycast accepts any member") {
  Router r({RouterKind::snf, 6, 60.0}, {DestMode::anycast, {5, 3}});
  Message m = msg(1, 0, kAnycast, 1);
  CHECK(r.destinations().accepts(m, 3));
  CHECK(r.destinations().accepts(m, 5));
  CHECK_FALSE(r.destinations().accepts(m, 4));
  EncounterTable t(8);
  t.record(3, 10.0);
  t.record(5, 40.0);
  CHECK(r.last_met_destination(t, m) == 40.0);
}
