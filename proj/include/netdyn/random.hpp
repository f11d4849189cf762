#pragma once

#include <cstdint>
#include <random>

namespace netdyn {

/// Seeded generator with a fixed, documented draw algorithm.
///
/// The engine is std::mt19937_64 (bit-exact across standard libraries). The
/// distributions are implemented here rather than taken from <random>, whose
/// distribution algorithms are implementation-defined, so a given seed yields
/// the same graphs and initial data on every platform:
///   - uniform01(): top 53 bits of one engine output, scaled by 2^-53, in [0, 1)
///   - index(n):    rejection sampling on one engine output per attempt,
///                  accepting x < M - (M mod n) with M = 2^64 - 1,
///                  result x % n
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netdyn
