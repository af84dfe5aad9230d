#pragma once

#include <cstdint>
#include <random>

namespace birk {

// mt19937_64 output is pinned by the standard; the distributions are not.
// Map raw 64-bit draws to doubles by hand so streams are identical everywhere.
inline double rng_u01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double rng_uniform(std::mt19937_64& g, double a, double b) {
  return a + (b - a) * rng_u01(g);
}

inline int rng_int(std::mt19937_64& g, int lo, int hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(g() % span);
}

}  // namespace birk
