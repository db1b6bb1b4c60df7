#pragma once

#include <cstdint>

namespace rholab {

/// SplitMix64 finalizer: the bit mixer used both for hashing states onto
/// partition classes and as the core of the experiment generator.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Derives the seed of an independent child stream. Every module draws its
/// randomness from streams split off one experiment seed by stream id so
/// trial-level ordering never perturbs replay.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream_id) {
  return mix64(seed ^ mix64(stream_id + kGoldenGamma));
}

/// Counter-based SplitMix64 generator. Platform-independent: all outputs are
/// pure 64-bit integer arithmetic, so seeded runs replay bit-for-bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Unbiased draw from {0, ..., n-1} by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace rholab
