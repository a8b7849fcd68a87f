// Seeded, portable random generation. PCG32 with an explicit stream
// selector, so (seed, stream) pairs give independent reproducible
// substreams on every platform.
#pragma once

#include <cstdint>

namespace panelcross {

struct Pcg32 {
  std::uint64_t state = 0;
  std::uint64_t inc = 0;

  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0) {
    inc = (stream << 1u) | 1u;
    state = 0;
    next();
    state += seed;
    next();
  }

  std::uint32_t next() {
    const std::uint64_t old = state;
    state = old * 6364136223846793005ULL + inc;
    const std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // Unbiased draw from [0, bound) by rejection.
  std::uint32_t next_below(std::uint32_t bound) {
    const std::uint32_t threshold = (0u - bound) % bound;
    while (true) {
      const std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }
};

}  // namespace panelcross
