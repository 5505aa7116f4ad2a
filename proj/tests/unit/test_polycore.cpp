#include <doctest.h>

#include "helpers.hpp"
#include "jacred/error.hpp"
#include "jacred/random.hpp"

using namespace jacred;
using testing::P;

namespace {

Poly random_poly(Rng& rng, std::size_t n, unsigned max_deg, std::size_t terms) {
  std::vector<Poly::Term> ts;
  for (std::size_t k = 0; k < terms; ++k) {
    std::vector<unsigned> e(n);
    unsigned budget = static_cast<unsigned>(rng.uniform(0, max_deg));
    for (std::size_t v = 0; v < n && budget > 0; ++v) {
      const unsigned take = static_cast<unsigned>(rng.uniform(0, budget));
      e[v] = take;
      budget -= take;
    }
    ts.emplace_back(Monomial::from_exponents(e), rng.rational(20, 5));
  }
  return Poly::from_terms(n, std::move(ts));
}

}  // namespace

TEST_CASE("Rational stays canonical") {
  Rational a = parse_rational("6/4");
  CHECK(a == Rational(3, 2));
  CHECK(a.get_den() == 2);
  CHECK(to_string(Rational(0)) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}

TEST_CASE("Degree of zero is a sentinel") {
  CHECK(Poly(2).degree().is_minus_infinity());
  CHECK_THROWS_AS(Poly(2).degree().value(), DomainError);
  CHECK(Poly(2).degree() < Degree::of(0));
  CHECK(P("x^2*y + y").degree() == Degree::of(3));
}

TEST_CASE("terms iterate in descending graded-lex order") {
  Poly p = P("y + x + x*y + x^2 + 1 + y^2");
  std::vector<std::string> seen;
  for (const auto& [m, c] : p.terms()) seen.push_back(print_poly(Poly::monomial(2, m), std::vector<std::string>{"x", "y"}));
  CHECK(seen == std::vector<std::string>{"x^2", "x*y", "y^2", "x", "y", "1"});
}

TEST_CASE("derive") {
  CHECK(derive(P("x^2*y"), 0) == P("2*x*y"));
  CHECK(derive(P("7"), 0).is_zero());
  CHECK(derive(P("(x*y - 1)^2"), 1) == P("2*x*(x*y - 1)"));
  CHECK_THROWS_AS(derive(P("x"), 2), DomainError);
}

TEST_CASE("substitute") {
  std::vector<std::string> v3{"x", "y", "t"};
  std::vector<Poly> scale{P("t*x", v3), P("t*y", v3)};
  CHECK(substitute(P("x + y"), scale) == P("t*x + t*y", v3));
  std::vector<Poly> shift{P("x + 1", {"x"})};
  CHECK(substitute(P("x^2", {"x"}), shift) == P("x^2 + 2*x + 1", {"x"}));
  std::vector<Poly> swap{P("y"), P("x")};
  CHECK(substitute(P("x*y - 1"), swap) == P("x*y - 1"));
  std::vector<Poly> wrong_len{P("x")};
  CHECK_THROWS_AS(substitute(P("x + y"), wrong_len), DomainError);
  std::vector<Poly> mixed{P("x"), P("t", v3)};
  CHECK_THROWS_AS(substitute(P("x + y"), mixed), DomainError);
}

TEST_CASE("homogeneous_components") {
  auto h = homogeneous_components(P("x + x^2 + x^3"));
  REQUIRE(h.size() == 3);
  CHECK(h.at(1) == P("x"));
  CHECK(h.at(2) == P("x^2"));
  CHECK(h.at(3) == P("x^3"));
  CHECK(homogeneous_components(Poly(2)).empty());
  auto g = homogeneous_components(P("(x + y)^2 + y"));
  REQUIRE(g.size() == 2);
  CHECK(g.at(1) == P("y"));
  CHECK(g.at(2) == P("x^2 + 2*x*y + y^2"));
}

TEST_CASE("eval") {
  std::vector<Rational> one{1, 1};
  CHECK(eval(P("x*y - 1"), one) == 0);
  std::vector<Rational> two{2};
  CHECK(eval(P("x^3", {"x"}), two) == 8);
  std::vector<Rational> bad{1};
  CHECK_THROWS_AS(eval(P("x"), bad), DomainError);
}

TEST_CASE("exact_divide") {
  std::vector<std::string> xt{"x", "t"};
  CHECK(exact_divide(P("t*x + t^2*x^2", xt), P("t", xt)) == P("x + t*x^2", xt));
  CHECK(exact_divide(P("x^2 - 1"), P("x - 1")) == P("x + 1"));
  CHECK_THROWS_AS(exact_divide(P("x"), P("y")), NotDivisible);
  CHECK_THROWS_AS(exact_divide(P("x"), Poly(2)), DomainError);
}

TEST_CASE("coefficients_in round trip") {
  Poly p = P("3*x^2*y + x*y^2 - y + 5");
  auto cs = coefficients_in(p, 0);
  REQUIRE(cs.size() == 3);
  CHECK(cs[2] == P("3*y"));
  CHECK(cs[1] == P("y^2"));
  CHECK(cs[0] == P("5 - y"));
  CHECK(from_coefficients_in(cs, 0) == p);
}

TEST_CASE("ring axioms and homomorphisms on seeded random polynomials") {
  Rng rng(20240917);
  for (int trial = 0; trial < 40; ++trial) {
    Poly p = random_poly(rng, 3, 4, 5), q = random_poly(rng, 3, 4, 5), r = random_poly(rng, 3, 3, 4);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p * q == q * p);
    CHECK(p - p == Poly(3));
    for (std::size_t v = 0; v < 3; ++v) CHECK(derive(p * q, v) == derive(p, v) * q + p * derive(q, v));
    std::vector<Poly> im{random_poly(rng, 2, 2, 3), random_poly(rng, 2, 2, 3), random_poly(rng, 2, 2, 3)};
    CHECK(substitute(p * q, im) == substitute(p, im) * substitute(q, im));
    Poly sum(3);
    for (const auto& [d, c] : homogeneous_components(p)) sum += c;
    CHECK(sum == p);
    if (!q.is_zero()) CHECK(exact_divide(p * q, q) == p);
    std::vector<Rational> pt{rng.rational(9, 4), rng.rational(9, 4), rng.rational(9, 4)};
    CHECK(eval(p * q, pt) == eval(p, pt) * eval(q, pt));
    CHECK(eval(p + q, pt) == eval(p, pt) + eval(q, pt));
  }
}

TEST_CASE("renumbered and extended") {
  Poly p = P("x^2*y");
  std::vector<std::size_t> images{2, 0};
  CHECK(p.renumbered(images, 3) == P("y*t^2", {"y", "z", "t"}));
  CHECK(p.extended(4).varcount() == 4);
  CHECK_THROWS_AS(p.extended(1), DomainError);
}
