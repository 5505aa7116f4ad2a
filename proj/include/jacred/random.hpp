#pragma once

#include <cstdint>
#include <random>

#include "jacred/rational.hpp"

namespace jacred {

/// Seeded generator with bit-reproducible output across platforms: the
/// engine is fully specified by the standard and the integer mapping below
/// does not depend on library-specific distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi] (rejection sampling, no modulo bias).
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Random rational num/den with |num| <= num_bound and 1 <= den <= den_bound.
  Rational rational(std::int64_t num_bound, std::int64_t den_bound);

  /// Independent stream derived from a seed and a stream index.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace jacred
