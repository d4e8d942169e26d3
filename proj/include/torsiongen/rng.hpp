#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace torsiongen
{

/// Uniform draw in [0, bound) by rejection; unlike std::uniform_int_distribution
/// the result sequence is the same on every standard library.
inline std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t bound)
{
  std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Fisher-Yates on top of draw_below.
template <class It>
void portable_shuffle(It first, It last, std::mt19937_64 &rng)
{
  auto const n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    auto const j = draw_below(rng, i);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

} // namespace torsiongen
