#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace jacred {

/// A power product x_{i1}^{e1} ... x_{ik}^{ek}.
///
/// Stored sparsely as (variable, exponent) pairs sorted by variable with
/// every exponent positive; maps produced by the reducer live in hundreds of
/// variables while each monomial touches at most a handful. The ambient
/// variable count is owned by the enclosing Poly.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;

  /// From a dense exponent vector indexed by variable position.
  static Monomial from_exponents(std::span<const unsigned> exponents);
  /// x_var^exponent (the unit monomial when exponent is 0).
  static Monomial variable(std::size_t var, unsigned exponent = 1);
  /// From arbitrary (var, exp) pairs; duplicates are merged, zeros dropped.
  static Monomial from_factors(std::vector<Factor> factors);

  unsigned degree() const { return degree_; }
  unsigned exponent(std::size_t var) const;
  std::span<const Factor> factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }
  /// One past the largest variable index used (0 for the unit monomial).
  std::size_t support_end() const { return factors_.empty() ? 0 : factors_.back().first + 1; }

  /// Dense exponent vector of the given length.
  std::vector<unsigned> exponents(std::size_t varcount) const;

  bool divides(const Monomial& other) const;
  /// other / *this; requires divides(other).
  Monomial cofactor_in(const Monomial& other) const;

  /// Drops `var` entirely and returns the removed exponent.
  std::pair<Monomial, unsigned> split_off(std::size_t var) const;

  /// Renumbers variables through `images` (images[v] is the new index of v).
  Monomial renumbered(std::span<const std::size_t> images) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) = default;

  /// Graded lexicographic order: total degree first, then the larger
  /// exponent at the first differing variable wins.
  friend std::strong_ordering grlex(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  std::vector<Factor> factors_;
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Strict weak order placing grlex-larger monomials first.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex(a, b) > 0; }
};

}  // namespace jacred
