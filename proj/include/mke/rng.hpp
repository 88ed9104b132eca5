#pragma once

// Counter-based deterministic randomness. Every draw is a pure function of
// (seed, index, slot), so sampled experiments are reproducible regardless of
// evaluation order and individual samples can be regenerated in isolation.

#include <cstdint>

namespace mke {
namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Uniform double in [0, 1) from a stateless counter stream.
inline double uniform01(std::uint64_t seed, std::uint64_t index, std::uint64_t slot) {
  std::uint64_t h = detail::mix64(seed ^ 0x243f6a8885a308d3ull);
  h = detail::mix64(h ^ index);
  h = detail::mix64(h ^ (slot * 0x100000001b3ull));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform double in [lo, hi).
inline double uniform_in(std::uint64_t seed, std::uint64_t index, std::uint64_t slot,
                         double lo, double hi) {
  return lo + (hi - lo) * uniform01(seed, index, slot);
}

}  // namespace mke
