#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace dtnsim {

/// splitmix64 finalizer. Used to derive independent seeds for sub-streams.
std::uint64_t mix64(std::uint64_t x);

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

/// Seedable generator with a fixed, portable draw sequence.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the
/// C++ standard. The conversions to doubles and bounded integers are done
/// here rather than through <random> distributions, which are allowed to
/// differ between standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Stream keyed by (seed, tag, index). Reordering unrelated streams never
  /// changes the draws of this one.
  static Rng substream(std::uint64_t seed, std::string_view tag,
                       std::uint64_t index = 0);

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();

  /// Uniform in [lo, hi); returns lo when lo == hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dtnsim
