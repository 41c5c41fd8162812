#pragma once

#include <cstdint>
#include <random>

#include "qbs/bitstring.hpp"

namespace qbs {

/// Seeded random source. Every probabilistic operation in the simulator takes
/// one of these explicitly, so a (config, seed) pair fully determines a run.
///
/// uniform() and below() avoid the standard distribution classes on purpose:
/// their output is implementation-defined, and transcripts must be
/// reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}
  /// Decorrelated substream, used for per-trial seeding in Monte-Carlo runs.
  Rng(std::uint64_t seed, std::uint64_t stream)
      : eng_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ull))) {}

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::uint8_t bit() { return static_cast<std::uint8_t>(eng_() & 1u); }

  /// Uniform integer in [0, bound) by rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      std::uint64_t x = eng_();
      if (x < limit) return x % bound;
    }
  }

  Bitstring bits(std::size_t count) {
    Bitstring out;
    for (std::size_t i = 0; i < count; ++i) out.append(bit());
    return out;
  }

  Bitstring nonzero_bits(std::size_t count) {
    for (;;) {
      Bitstring out = bits(count);
      if (!out.all_zero()) return out;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace qbs
