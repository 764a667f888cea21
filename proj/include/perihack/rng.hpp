#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace perihack {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// bounded draws and shuffles are done here to keep streams identical across
// standard libraries.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;  // reject the biased low tail
  for (;;) {
    std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

inline int roll_d20(Rng& rng) { return 1 + static_cast<int>(uniform_below(rng, 20)); }

inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_below(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

// Independent stream derived from a base seed and a salt.
inline Rng derived_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
  return Rng(seq);
}

}  // namespace perihack
