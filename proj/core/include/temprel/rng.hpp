#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace temprel {

/// Unbiased draw from [0, n) via rejection sampling on the raw engine
/// output. std::uniform_int_distribution is implementation-defined, so
/// seeded runs would not be portable across standard libraries.
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % n;
}

/// Fisher-Yates shuffle driven by bounded_uniform, reproducible everywhere.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(bounded_uniform(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace temprel
