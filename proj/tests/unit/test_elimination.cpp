#include <doctest.h>

#include "helpers.hpp"
#include "jacred/elimination.hpp"
#include "jacred/error.hpp"
#include "jacred/random.hpp"

using namespace jacred;
using testing::P;

namespace {

UniPoly U(std::vector<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return UniPoly(std::move(c));
}

UniPoly roots_poly(const std::vector<Rational>& roots) {
  UniPoly p = UniPoly::constant(1);
  for (const auto& r : roots) p = p * UniPoly::linear_root(r);
  return p;
}

}  // namespace

TEST_CASE("bivariate resultant examples") {
  CHECK(resultant(P("x^2 - y"), P("x - 1"), 0) == P("1 - y"));
  std::vector<std::string> xab{"x", "a", "b"};
  Poly r = resultant(P("x - a", xab), P("x - b", xab), 0);
  CHECK((r == P("a - b", xab) || r == P("b - a", xab)));
  CHECK(resultant(P("x^2 + 1"), P("x^2 + 1"), 0).is_zero());
  CHECK_THROWS_AS(resultant(Poly(2), Poly(2), 0), DomainError);
}

TEST_CASE("degenerate resultant is a power") {
  // Res_x(x^3 - y, c) = c^3 for c free of x
  CHECK(resultant(P("x^3 - y"), P("y + 2"), 0) == pow(P("y + 2"), 3));
}

TEST_CASE("resultant matches the Sylvester determinant on small cases") {
  // Res(x^2 + a x + b, x - c) = c^2 + a c + b
  std::vector<std::string> v{"x", "a", "b", "c"};
  CHECK(resultant(P("x^2 + a*x + b", v), P("x - c", v), 0) == P("c^2 + a*c + b", v));
  // discriminant-like: Res(x^2 + b, 2x) = 4b
  CHECK(resultant(P("x^2 + b", v), P("2*x", v), 0) == P("4*b", v));
  // Res(x^3 - 1, x^2 - 1): common root x=1
  CHECK(resultant(U({-1, 0, 0, 1}), U({-1, 0, 1})) == 0);
  // Res(x^2 + 1, x^2 - 2) = (i^2 - 2)((-i)^2 - 2) = 9
  CHECK(resultant(U({1, 0, 1}), U({-2, 0, 1})) == 9);
  // Res(2x^3 + x, x - 3) = (-1)^3 * ... = Res(x - 3, 2x^3 + x) * (-1)^(3*1); value p(3) = 57
  CHECK(resultant(U({0, 1, 0, 2}), U({-3, 1})) == -57);
  CHECK(resultant(U({-3, 1}), U({0, 1, 0, 2})) == 57);
}

TEST_CASE("resultant vanishes iff a common factor involving x exists") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Poly common = P("x + " + std::to_string(rng.uniform(-5, 5)) + "*y + 1");
    Poly a = P("x^2 + " + std::to_string(rng.uniform(1, 9)) + "*y");
    Poly b = P("x - " + std::to_string(rng.uniform(1, 9)) + "*y^2 + 3");
    CHECK(resultant(a * common, b * common, 0).is_zero());
    CHECK(!resultant(a, b, 0).is_zero());
  }
}

TEST_CASE("specialization commutes with the resultant") {
  Rng rng(11);
  Poly p = P("x^3*y - 2*x^2 + y^2*x + 5");
  Poly q = P("3*x^2 + x*y^3 - y + 1");
  Poly r = resultant(p, q, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Rational y0 = rng.rational(30, 7);
    if (y0 == 0) continue;  // keeps the leading coefficient y of p alive
    std::vector<Poly> im{P("x", {"x"}), Poly::constant(1, y0)};
    UniPoly ps = to_unipoly(substitute(p, im), 0), qs = to_unipoly(substitute(q, im), 0);
    std::vector<Rational> pt{0, y0};
    CHECK(eval(r, pt) == resultant(ps, qs));
  }
}

TEST_CASE("squarefree_part") {
  CHECK(squarefree_part(U({1, -2, 1}) * U({2, 1})) == (U({-1, 1}) * U({2, 1})).monic());
  CHECK(squarefree_part(U({0, 0, 0, 1})) == U({0, 1}));
  CHECK_THROWS_AS(squarefree_part(UniPoly()), DomainError);
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> roots;
    UniPoly distinct = UniPoly::constant(1), full = UniPoly::constant(1);
    for (long r = -3; r <= 3; ++r) {
      const int mult = static_cast<int>(rng.uniform(0, 3));
      if (mult == 0) continue;
      distinct = distinct * UniPoly::linear_root(r);
      for (int k = 0; k < mult; ++k) full = full * UniPoly::linear_root(r);
    }
    full = Rational(5, 3) * full;
    CHECK(squarefree_part(full) == distinct.monic());
  }
}

TEST_CASE("sturm_count") {
  CHECK(sturm_count(U({1, 0, 1})) == 0);
  CHECK(sturm_count(U({0, -1, 0, 1})) == 3);
  UniPoly p = U({-1, 1}) * U({-2, 1}) * U({3, 0, 1});
  CHECK(sturm_count(p, Rational(0), Rational(3)) == 2);
  CHECK(sturm_count(p, Rational(1), Rational(2)) == 1);  // (1, 2] holds only 2
  CHECK_THROWS_AS(sturm_count(UniPoly()), DomainError);
  // repeated roots are counted once
  CHECK(sturm_count(U({-1, 1}) * U({-1, 1}) * U({1, 1})) == 2);
}

TEST_CASE("rational roots times an irreducible quadratic") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> roots;
    for (int k = 0; k < 4; ++k) roots.push_back(Rational(static_cast<long>(10 * trial + 3 * k - 7), 3));
    UniPoly p = roots_poly(roots) * U({rng.uniform(1, 9), rng.uniform(-1, 1), 1});
    CHECK(sturm_count(p) == 4);
    CHECK(isolate_real_roots(p).size() == 4);
  }
}

TEST_CASE("isolate_real_roots") {
  auto iv = isolate_real_roots(U({-2, 0, 1}));
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].lo < iv[0].hi);
  CHECK(iv[0].hi <= iv[1].lo);
  UniPoly p = U({-2, 0, 1});
  for (auto& i : iv) {
    auto fine = refine(p, i, Rational(1, 1000));
    CHECK(fine.hi - fine.lo <= Rational(1, 1000));
    CHECK(p.sign_at(fine.lo) * p.sign_at(fine.hi) <= 0);
  }
  auto narrowed = refine(p, iv[1], Rational(1, 2));
  CHECK(narrowed.lo >= 1);
  CHECK(narrowed.hi <= 2);
  CHECK(isolate_real_roots(U({1, 0, 1})).empty());
  auto zero = isolate_real_roots(U({0, 1}));
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].lo < 0);
  CHECK(zero[0].hi >= 0);
}

TEST_CASE("sturm count agrees with isolation on assorted polynomials") {
  std::vector<UniPoly> corpus{U({-6, 11, -6, 1}), U({1, 0, -3, 0, 1}), U({0, 0, 1, 0, -1}), U({5, 0, 0, 0, 0, 1}),
                              U({-1, 0, 0, 0, 0, 0, 1})};
  for (const auto& p : corpus) CHECK(sturm_count(p) == isolate_real_roots(p).size());
}

TEST_CASE("cauchy bound encloses all roots") {
  UniPoly p = U({-6, 11, -6, 1});
  Rational b = cauchy_root_bound(p);
  CHECK(b > 3);
}
