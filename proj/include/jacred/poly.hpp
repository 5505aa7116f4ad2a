#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <span>
#include <utility>
#include <vector>

#include "jacred/monomial.hpp"
#include "jacred/rational.hpp"

namespace jacred {

/// Total degree of a polynomial. The zero polynomial has degree "minus
/// infinity", which is a distinct state rather than a magic integer.
class Degree {
 public:
  static Degree minus_infinity() { return Degree(); }
  static Degree of(unsigned d) { return Degree(d); }

  bool is_minus_infinity() const { return !value_; }
  /// Throws DomainError for minus infinity.
  unsigned value() const;

  friend bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (!a.value_ || !b.value_) return bool(a.value_) <=> bool(b.value_);
    return *a.value_ <=> *b.value_;
  }

 private:
  Degree() = default;
  explicit Degree(unsigned d) : value_(d) {}
  std::optional<unsigned> value_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Values are immutable; copies share the term storage. Terms iterate in
/// descending graded lexicographic order and never carry a zero coefficient.
class Poly {
 public:
  using Term = std::pair<Monomial, Rational>;

  /// The zero polynomial in `varcount` variables.
  explicit Poly(std::size_t varcount = 0);
  static Poly constant(std::size_t varcount, const Rational& c);
  /// x_var in `varcount` variables. Shared instances are cached.
  static Poly variable(std::size_t var, std::size_t varcount);
  static Poly monomial(std::size_t varcount, Monomial m, const Rational& c = 1);
  /// Builds from arbitrary terms: duplicates merge, zeros drop.
  static Poly from_terms(std::size_t varcount, std::vector<Term> terms);
  /// Takes terms already in canonical form (sorted descending, unique
  /// monomials, nonzero coefficients). Not checked.
  static Poly adopt_canonical(std::size_t varcount, std::vector<Term> terms);

  std::size_t varcount() const { return varcount_; }
  std::span<const Term> terms() const;
  std::size_t size() const { return terms().size(); }
  bool is_zero() const { return size() == 0; }
  bool is_constant() const;
  /// Constant term (zero when absent).
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  const Term& leading_term() const;

  Degree degree() const;
  /// Degree in a single variable; minus infinity for zero.
  Degree degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;
  bool is_homogeneous() const;

  /// Same polynomial viewed in a larger ring (new variables appended).
  Poly extended(std::size_t varcount) const;
  /// Renumbers variables: variable v becomes images[v] in a ring of
  /// `varcount` variables.
  Poly renumbered(std::span<const std::size_t> images, std::size_t varcount) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, const Poly& p);
  friend Poly operator*(const Poly& p, const Rational& c) { return c * p; }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b);

  /// Identity of the shared storage (cheap equality shortcut).
  bool shares_storage_with(const Poly& o) const { return terms_ == o.terms_; }

  std::size_t hash() const;

 private:
  std::size_t varcount_;
  std::shared_ptr<const std::vector<Term>> terms_;
};

Poly pow(const Poly& p, unsigned exponent);

/// Partial derivative with respect to variable `var`.
Poly derive(const Poly& p, std::size_t var);

/// Ring homomorphism x_i -> images[i]. All images must share one varcount.
Poly substitute(const Poly& p, std::span<const Poly> images);

/// Substitutes only the listed variables; others map to themselves.
Poly substitute_some(const Poly& p, std::span<const std::pair<std::size_t, Poly>> images);

/// Splits p by total degree; zero components are omitted.
std::map<unsigned, Poly> homogeneous_components(const Poly& p);

/// Homogeneous component of a single degree (possibly zero).
Poly homogeneous_part(const Poly& p, unsigned degree);

Rational eval(const Poly& p, std::span<const Rational> point);

/// Returns r with r * q == p. Throws NotDivisible when q does not divide p
/// and DomainError when q is zero.
Poly exact_divide(const Poly& p, const Poly& q);

/// Coefficients of p viewed as a polynomial in x_var over the remaining
/// variables: result[k] is the coefficient of x_var^k, in the same ring.
std::vector<Poly> coefficients_in(const Poly& p, std::size_t var);

/// Inverse of coefficients_in.
Poly from_coefficients_in(std::span<const Poly> coefficients, std::size_t var);

/// Accumulates terms by monomial; the backbone of multiplication and
/// substitution.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t varcount) : varcount_(varcount) {}
  void add(const Monomial& m, const Rational& c);
  void add(const Poly& p, const Rational& scale = 1);
  void add_product(const Poly& p, const Monomial& m, const Rational& c);
  Poly finish();

 private:
  std::size_t varcount_;
  std::vector<std::pair<Monomial, Rational>> pending_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

}  // namespace jacred
