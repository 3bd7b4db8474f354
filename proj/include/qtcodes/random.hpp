// Seeded randomness helpers. std::mt19937_64 produces a portable sequence; the
// standard distributions do not, so bounded draws are done here.

#ifndef QTCODES_RANDOM_HPP
#define QTCODES_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qtcodes {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

/// Derives a sub-seed from a root seed and a derivation key.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> key) noexcept {
  std::uint64_t h = splitmix64(root);
  for (std::uint64_t k : key) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

/// FNV-1a; a stable string hash for derivation keys.
inline std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

/// Uniform integer in [0, bound); bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

/// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11U) * 0x1.0p-53; }

}  // namespace qtcodes

#endif  // QTCODES_RANDOM_HPP
