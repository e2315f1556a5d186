#pragma once

#include <cstdint>
#include <random>

namespace elm {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic generator wrapper. std::mt19937_64 fixes the raw stream
// across platforms; the bounded/real draws below avoid
// std::uniform_*_distribution, whose outputs differ between standard
// library implementations. Seeded streams therefore reproduce bit-identically
// everywhere, which the weight shapers and the experiment runner rely on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
    stream_key_ = splitmix64(s);
  }

  std::uint64_t u64() { return engine_(); }

  // Unbiased integer in [0, bound). bound must be >= 1.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

  // Uniform double in [0, 1) with 53 random bits.
  double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Independent substream (per row, per block, per repeat). Mixing the tag
  // through splitmix64 decorrelates adjacent tags.
  Rng derive(std::uint64_t tag) const {
    std::uint64_t s = stream_key_ ^ (0xA0761D6478BD642Full * (tag + 1));
    return Rng(splitmix64(s));
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t stream_key_ = 0;
};

}  // namespace elm
