#pragma once

#include <cstdint>
#include <random>

namespace wsp {

// Unbiased draw from [0, n) on top of mt19937. std::uniform_int_distribution
// is implementation-defined, which would break the byte-identical-output
// contract across toolchains.
inline std::uint32_t rng_below(std::mt19937& gen, std::uint32_t n) {
  if (n <= 1) return 0;
  const std::uint32_t limit = std::mt19937::max() - std::mt19937::max() % n;
  for (;;) {
    const std::uint32_t draw = gen();
    if (draw < limit) return draw % n;
  }
}

// Uniform integer in [lo, hi], inclusive.
inline int rng_range(std::mt19937& gen, int lo, int hi) {
  return lo + static_cast<int>(rng_below(gen, static_cast<std::uint32_t>(hi - lo + 1)));
}

inline bool rng_chance(std::mt19937& gen, std::uint32_t numerator, std::uint32_t denominator) {
  return rng_below(gen, denominator) < numerator;
}

}  // namespace wsp
