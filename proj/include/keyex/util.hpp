#ifndef KEYEX_UTIL_HPP
#define KEYEX_UTIL_HPP

#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace keyex {

// All randomized behavior in the library goes through mt19937_64 with the
// helpers below. std::uniform_*_distribution and std::shuffle are
// implementation-defined, so they are avoided anywhere a seed must reproduce
// byte-identical output across toolchains.

inline double uniform_unit(std::mt19937_64& rng) {
  // 53-bit mantissa draw in [0, 1)
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

// Modulo bias is negligible for the index ranges used here (n << 2^64).
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

template <typename T>
void shuffle_deterministic(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

inline std::string format_fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Shortest representation that round-trips a double exactly.
inline std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace keyex

#endif  // KEYEX_UTIL_HPP
