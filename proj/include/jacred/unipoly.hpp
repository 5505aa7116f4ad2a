#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jacred/poly.hpp"
#include "jacred/rational.hpp"

namespace jacred {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The leading coefficient is nonzero unless the polynomial is zero.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> ascending);
  static UniPoly constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }
  /// The polynomial x - root.
  static UniPoly linear_root(const Rational& root) { return UniPoly(std::vector<Rational>{-root, 1}); }

  std::span<const Rational> coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Degree degree() const;
  /// Coefficient of x^k (zero beyond the degree).
  Rational operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  const Rational& leading_coefficient() const;

  Rational eval(const Rational& x) const;
  /// Sign of the value at x.
  int sign_at(const Rational& x) const { return sgn(eval(x)); }

  UniPoly derivative() const;
  /// Divides by the leading coefficient (zero stays zero).
  UniPoly monic() const;

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& c, const UniPoly& p);
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct DivMod {
  UniPoly quotient;
  UniPoly remainder;
};

/// Euclidean division over Q. Throws DomainError on a zero divisor.
DivMod divmod(const UniPoly& a, const UniPoly& b);

/// Monic greatest common divisor (zero when both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Polynomial in the single variable `var` of `p` as a dense UniPoly.
/// Throws DomainError if p involves any other variable.
UniPoly to_unipoly(const Poly& p, std::size_t var);

/// Embeds u as a polynomial in x_var of a ring with `varcount` variables.
Poly from_unipoly(const UniPoly& u, std::size_t var, std::size_t varcount);

}  // namespace jacred
