#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "jacred/certlab.hpp"
#include "jacred/unipoly.hpp"

namespace jacred {

/// F o R with R = [[1 + ab, a], [b, 1]] (determinant 1) chosen so that x2 can be
/// eliminated: every component has a constant leading coefficient in x2 or
/// does not involve x2; both involve it unless the one that does is linear in x2.
struct Rotation {
  PolyMap map;
  Automorphism rotation;
  Rational a = 0;
  Rational b = 0;
  std::size_t attempts = 0;
};

bool generic_for_elimination(const PolyMap& f);

/// Tries the identity first (unless `try_identity` is false), then seeded
/// (a, b). Throws DomainError when retries are exhausted.
Rotation generic_rotation(const PolyMap& f, std::uint64_t seed, bool try_identity = true);

struct SpecializedFiber {
  std::vector<Rational> target;
  UniPoly resultant;     ///< Res_x2(f1 - y1, f2 - y2) in x1
  UniPoly resultant_sf;  ///< its monic squarefree part
  std::size_t real_count = 0;
  std::size_t complex_count = 0;
  /// The resultant has only simple roots, so distinct fiber points have
  /// distinct x1 and real x1 gives a real point.
  bool simple = false;
};

/// Real and complex fiber sizes over a target for a map already in generic
/// position (see generic_rotation).
SpecializedFiber fiber_count_real(const PolyMap& rotated, std::span<const Rational> target);

struct DexResult {
  std::size_t value = 0;
  std::size_t retries = 0;  ///< disagreements between the two specializations
  std::size_t rotation_attempts = 0;
};

/// dex by agreement of two specializations (two targets, two rotations).
DexResult dex2(const PolyMap& f, std::uint64_t seed, std::size_t max_retries = 8);

struct AttributeReport {
  std::optional<std::size_t> dex;
  std::size_t mfs_observed = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool parity_consistent = false;
  std::size_t genericity_retries = 0;
  std::optional<std::size_t> sag_external;  ///< documentation only, never computed
  std::size_t max_complex = 0;
  std::size_t image_samples = 0;
  std::size_t free_samples = 0;
  std::size_t empty_fibers = 0;
  std::size_t skipped_targets = 0;  ///< targets without a simple resultant under every rotation tried
  std::map<std::size_t, std::size_t> real_count_histogram;
};

/// Observed maximum real fiber size over seeded targets, alternating images
/// F(p) of random points with free random targets, plus dex and the parity check.
AttributeReport mfs_sample(const PolyMap& f, std::uint64_t seed, std::size_t samples);

struct MinimalPolyCoordinate {
  Poly resultant;  ///< in (x1, x2, Y1, Y2); involves the chosen coordinate and Y only
  Poly stripped;   ///< base of a degenerate power, otherwise integer-primitive
  std::size_t degree = 0;
  bool degenerate_power = false;
};

/// Res over the other variable of (f1 - Y1, f2 - Y2) as a polynomial in x_coord.
MinimalPolyCoordinate minimal_poly_coordinate(const PolyMap& f, std::size_t coord);

}  // namespace jacred
