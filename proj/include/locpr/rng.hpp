#pragma once

#include <cstdint>
#include <random>

namespace locpr {

/// splitmix64 step; the standard 64-bit finalizing mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stream-split rule: stream k of master seed s is an mt19937_64 engine
/// seeded with splitmix64 starting from state s + k * 0x9E3779B97F4A7C15.
/// Every piece of randomness in the library is derived this way, so one
/// master seed reproduces any experiment regardless of scheduling.
inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t state = master_seed + stream_index * 0x9E3779B97F4A7C15ull;
  std::seed_seq seq{splitmix64(state), splitmix64(state), splitmix64(state), splitmix64(state)};
  return std::mt19937_64(seq);
}

/// Unbiased draw from {0, 1, ..., bound-1} by rejection; no modulo bias.
template <class Rng>
std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound) - 1;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw > limit);
  return draw % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace locpr
