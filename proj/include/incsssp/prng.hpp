#pragma once

#include <cstdint>
#include <random>

namespace incsssp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable generator with deterministic sub-streams: split(tag) yields an
/// independent generator for the same (seed, tag) on every run.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  Prng split(std::uint64_t tag) const { return Prng(splitmix64(seed_ ^ splitmix64(tag + 0x632be59bd9b4e019ULL))); }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound] (inclusive), unbiased. Does not depend on
  /// the standard library's distribution implementation.
  std::uint64_t uniform_upto(std::uint64_t bound) {
    if (bound == std::numeric_limits<std::uint64_t>::max()) return next();
    const std::uint64_t range = bound + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % range;
  }

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace incsssp
