#pragma once

// Reproducible per-item random streams: item k of a run with seed s draws from
// mt19937_64 seeded by seed_seq{s_lo, s_hi, k_lo, k_hi}. Both algorithms are
// fixed by the standard, so the streams agree across toolchains.

#include <cstdint>
#include <random>

namespace scx {

inline constexpr std::uint64_t kDefaultSeed = 0x5CE0;

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform integer in [0, bound) by rejection; std::uniform_int_distribution
/// is implementation-defined.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t bound) {
  const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
  for (;;) {
    const std::uint64_t v = g();
    if (v >= limit) return v % bound;
  }
}

}  // namespace scx
