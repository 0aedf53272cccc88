#pragma once

#include <cmath>
#include <cstdint>

namespace dmac {

// Deterministic pseudo-random primitives used throughout the library.
//
// Standard-library distributions are not bit-portable across
// implementations, so every random draw here goes through splitmix64.
// Replay determinism of the experiment harness depends on it.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// splitmix64 finalizer: bijective 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Combine a seed with stream identifiers into a fresh 64-bit key.
inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t k = mix64(seed);
  k = mix64(k ^ a);
  k = mix64(k ^ b);
  return mix64(k ^ c);
}

/// Map 64 random bits to a double in [0, 1).
inline double bits_to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based uniform draw in [0, 1), keyed on (seed, a, b, c).
inline double counter_unit(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b = 0, std::uint64_t c = 0) {
  return bits_to_unit(derive_key(seed, a, b, c));
}

/// Counter-based standard normal draw keyed on (seed, a, b).
/// Box-Muller on two independent keyed uniforms; the open-interval shift
/// keeps the log argument away from zero.
inline double counter_normal(std::uint64_t seed, std::uint64_t a,
                             std::uint64_t b = 0) {
  const double u1 =
      (static_cast<double>(derive_key(seed, a, b, 1) >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = counter_unit(seed, a, b, 2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

/// Small sequential engine for generator-style sampling (trees, candidate
/// sets). splitmix64 stream; state advances by the golden-ratio increment.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

  /// Uniform double in [0, 1).
  double next_unit() { return bits_to_unit(next_u64()); }

 private:
  std::uint64_t state_;
};

}  // namespace dmac
