#include <doctest.h>

#include <set>

#include "dtnsim/rng.h"

using dtnsim::Rng;

TEST_CASE("same seed gives the same sequence") {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("mt19937_64 reference value") {
  // The standard pins the 10000th output for the default seed.
  Rng r(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = r.next();
  CHECK(x == 9981545732273789042ULL);
}

TEST_CASE("substreams are keyed by tag and index") {
  Rng a = Rng::substream(1, "host:pedA", 0);
  Rng b = Rng::substream(1, "host:pedA", 0);
  Rng c = Rng::substream(1, "host:pedA", 1);
  Rng d = Rng::substream(1, "host:pedB", 0);
  Rng e = Rng::substream(2, "host:pedA", 0);
  const auto va = a.next();
  CHECK(va == b.next());
  CHECK(va != c.next());
  CHECK(va != d.next());
  CHECK(va != e.next());
}

TEST_CASE("uniform stays in range") {
  Rng r(3);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double v = r.uniform(25.0, 35.0);
    CHECK(v >= 25.0);
    CHECK(v <= 35.0);
  }
  CHECK(r.uniform(30.0, 30.0) == 30.0);
}

TEST_CASE("index covers every value") {
  Rng r(11);
  std::set<std::size_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto k = r.index(7);
    CHECK(k < 7);
    seen.insert(k);
  }
  CHECK(seen.size() == 7);
  CHECK_THROWS(r.index(0));
}
