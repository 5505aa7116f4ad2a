#include "jacred/attrlab.hpp"

#include <numeric>

#include "jacred/elimination.hpp"
#include "jacred/error.hpp"
#include "jacred/random.hpp"

namespace jacred {

namespace {

constexpr std::size_t kMaxRotationAttempts = 16;
constexpr std::size_t kRotationsPerTarget = 5;

void require_plane(const PolyMap& f, const char* op) {
  if (f.varcount() != 2 || f.size() != 2) throw DomainError(std::string(op) + ": expected a plane map");
}

void require_nondegenerate(const PolyMap& f, const char* op) {
  auto j = jacobian_det(f);
  if (j.value && j.value->is_zero()) throw DomainError(std::string(op) + ": map is degenerate (j = 0)");
}

// Integer coefficients with gcd 1 and a positive leading coefficient.
Poly integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Integer den = 1, num = 0;
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
  }
  Rational scale(den, num);
  scale.canonicalize();
  if (p.terms().front().second < 0) scale = -scale;
  return scale * p;
}

Rotation make_rotation(const PolyMap& f, const Rational& a, const Rational& b) {
  RatMatrix r = RatMatrix::from_rows({{1 + a * b, a}, {b, 1}});
  RatMatrix rinv = RatMatrix::from_rows({{1, -a}, {-b, 1 + a * b}});
  Rotation out;
  out.a = a;
  out.b = b;
  out.rotation = {RationalMap::linear(r), RationalMap::linear(rinv), AutVerification::exact_identity, "rotation"};
  std::vector<Poly> images{out.rotation.forward.component(0), out.rotation.forward.component(1)};
  std::vector<Poly> comps{substitute(f[0], images), substitute(f[1], images)};
  out.map = PolyMap(2, std::move(comps));
  return out;
}

std::vector<Rational> random_target(Rng& rng) { return {rng.rational(50, 7), rng.rational(50, 7)}; }

}  // namespace

bool generic_for_elimination(const PolyMap& f) {
  std::size_t involved = 0, max_deg = 0;
  for (const auto& c : f.components()) {
    if (!c.involves(1)) continue;
    ++involved;
    const unsigned d = c.degree_in(1).value();
    max_deg = std::max<std::size_t>(max_deg, d);
    for (const auto& [m, coef] : c.terms()) {
      if (m.exponent(1) == d && m.degree() != d) return false;
    }
  }
  // with one component free of x2 the resultant is a power of it unless the
  // other is linear in x2
  return involved == f.size() || (involved > 0 && max_deg == 1);
}

Rotation generic_rotation(const PolyMap& f, std::uint64_t seed, bool try_identity) {
  require_plane(f, "generic_rotation");
  for (std::size_t k = 0; k < kMaxRotationAttempts; ++k) {
    Rational a = 0, b = 0;
    if (k > 0 || !try_identity) {
      Rng rng(Rng::derive(seed, k));
      while (a == 0) a = rng.uniform(-4, 4);
      b = rng.uniform(-4, 4);
    }
    Rotation r = make_rotation(f, a, b);
    r.attempts = k + 1;
    if (generic_for_elimination(r.map)) return r;
  }
  throw DomainError("generic_rotation: no generic rotation found; retry with another seed");
}

SpecializedFiber fiber_count_real(const PolyMap& rotated, std::span<const Rational> target) {
  require_plane(rotated, "fiber_count_real");
  if (target.size() != 2) throw DomainError("fiber_count_real: target must have two coordinates");
  SpecializedFiber s;
  s.target.assign(target.begin(), target.end());
  const Poly g1 = rotated[0] - Poly::constant(2, target[0]);
  const Poly g2 = rotated[1] - Poly::constant(2, target[1]);
  const Poly r = resultant(g1, g2, 1);
  if (r.is_zero()) return s;  // positive-dimensional fiber: not simple
  s.resultant = to_unipoly(r, 0);
  s.resultant_sf = squarefree_part(s.resultant);
  s.complex_count = s.resultant_sf.degree().value();
  s.simple = s.resultant_sf.degree() == s.resultant.degree();
  s.real_count = s.complex_count == 0 ? 0 : sturm_count(s.resultant_sf);
  return s;
}

DexResult dex2(const PolyMap& f, std::uint64_t seed, std::size_t max_retries) {
  require_plane(f, "dex2");
  require_nondegenerate(f, "dex2");
  Rotation r1 = generic_rotation(f, Rng::derive(seed, 0));
  Rotation r2 = generic_rotation(f, Rng::derive(seed, 1), false);
  DexResult out;
  out.rotation_attempts = r1.attempts + r2.attempts;
  for (std::size_t k = 0; k <= max_retries; ++k) {
    Rng rng(Rng::derive(seed, 100 + k));
    auto t1 = random_target(rng), t2 = random_target(rng);
    auto a = fiber_count_real(r1.map, t1), b = fiber_count_real(r2.map, t2);
    if (a.simple && b.simple && a.complex_count == b.complex_count && a.complex_count > 0) {
      out.value = a.complex_count;
      return out;
    }
    ++out.retries;
  }
  throw DomainError("dex2: the two specializations did not agree within the retry budget");
}

AttributeReport mfs_sample(const PolyMap& f, std::uint64_t seed, std::size_t samples) {
  require_plane(f, "mfs_sample");
  AttributeReport rep;
  rep.seed = seed;
  auto dex = dex2(f, Rng::derive(seed, 0));
  rep.dex = dex.value;
  rep.genericity_retries = dex.retries;
  std::vector<Rotation> rotations;
  rotations.push_back(generic_rotation(f, Rng::derive(seed, 1)));
  const std::size_t max_draws = 4 * samples + 16;
  for (std::size_t k = 0; rep.samples < samples && k < max_draws; ++k) {
    Rng rng(Rng::derive(seed, 1000 + k));
    const bool image = k % 2 == 0;
    std::vector<Rational> target;
    if (image) {
      std::vector<Rational> p{rng.rational(20, 9), rng.rational(20, 9)};
      target = f.eval(p);
    } else {
      target = random_target(rng);
    }
    std::optional<SpecializedFiber> fiber;
    for (std::size_t j = 0; j < kRotationsPerTarget; ++j) {
      if (j == rotations.size()) rotations.push_back(generic_rotation(f, Rng::derive(seed, 1 + j), false));
      auto s = fiber_count_real(rotations[j].map, target);
      if (s.simple) {
        fiber = std::move(s);
        break;
      }
      ++rep.genericity_retries;
    }
    if (!fiber) {
      ++rep.skipped_targets;
      continue;
    }
    ++rep.samples;
    ++(image ? rep.image_samples : rep.free_samples);
    if (fiber->real_count == 0) ++rep.empty_fibers;
    ++rep.real_count_histogram[fiber->real_count];
    rep.mfs_observed = std::max(rep.mfs_observed, fiber->real_count);
    rep.max_complex = std::max(rep.max_complex, fiber->complex_count);
  }
  rep.parity_consistent = (*rep.dex - rep.mfs_observed) % 2 == 0 && rep.mfs_observed <= *rep.dex;
  return rep;
}

MinimalPolyCoordinate minimal_poly_coordinate(const PolyMap& f, std::size_t coord) {
  require_plane(f, "minimal_poly_coordinate");
  if (coord > 1) throw DomainError("minimal_poly_coordinate: coordinate index must be 0 or 1");
  require_nondegenerate(f, "minimal_poly_coordinate");
  const std::size_t other = 1 - coord;
  const Poly g1 = f[0].extended(4) - Poly::variable(2, 4);
  const Poly g2 = f[1].extended(4) - Poly::variable(3, 4);
  MinimalPolyCoordinate out;
  out.resultant = resultant(g1, g2, other);
  if (!g1.involves(other) || !g2.involves(other)) {
    out.degenerate_power = true;
    out.stripped = integer_primitive(g1.involves(other) ? g2 : g1);
  } else {
    out.stripped = integer_primitive(out.resultant);
  }
  out.degree = out.stripped.is_zero() ? 0 : out.stripped.degree_in(coord).value();
  return out;
}

}  // namespace jacred
