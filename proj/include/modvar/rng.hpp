#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace modvar {

/// Seeded pseudo-random stream with labeled splitting.
///
/// split() derives a child stream from this stream's seed and a label without
/// advancing this stream, so adding a new consumer never perturbs the draws of
/// another one.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  Rng split(std::string_view label) const;
  Rng split(std::uint64_t index) const;

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound > 0. Rejection sampling, so the result does
  /// not depend on the standard library's distribution implementation.
  std::uint64_t below(std::uint64_t bound);

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace modvar
