#pragma once
// Counter-based random draws: every variate is a pure function of its
// coordinates (seed, stream, step, index, ...). This makes simulations
// reproducible independently of thread count and lets two model variants
// share the exact same underlying uniforms (coupled runs).

#include <cstdint>

namespace liqnet::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t h) noexcept { return splitmix64(h); }

template <class... Rest>
constexpr std::uint64_t mix(std::uint64_t h, std::uint64_t key, Rest... rest) noexcept {
  return mix(splitmix64(h ^ (key + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2))), rest...);
}

// Map 64 random bits to a double in [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

template <class... Keys>
constexpr double uniform(std::uint64_t seed, Keys... keys) noexcept {
  return to_unit(mix(seed, static_cast<std::uint64_t>(keys)...));
}

// Uniform integer in [0, n). Modulo bias is negligible for n far below 2^64.
template <class... Keys>
constexpr std::uint64_t below(std::uint64_t n, std::uint64_t seed, Keys... keys) noexcept {
  return mix(seed, static_cast<std::uint64_t>(keys)...) % n;
}

}  // namespace liqnet::rng
