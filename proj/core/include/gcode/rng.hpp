#pragma once

#include <cstdint>

namespace gcode {

// Deterministic splitmix64 generator. All randomness in the library flows
// from a single 64-bit seed through named substreams, so identical seeds
// reproduce identical artifacts on any platform (the standard library
// distributions are implementation-defined and are not used).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent substream for task `stream_id` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream_id + 1)));
    mix.next();
    return Rng(mix.next());
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), unbiased by rejection. bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace gcode
