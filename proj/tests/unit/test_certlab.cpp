#include <doctest.h>

#include "helpers.hpp"
#include "jacred/certlab.hpp"
#include "jacred/error.hpp"

using namespace jacred;
using testing::M;
using testing::P;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};

Automorphism shear_y(const std::string& a, const std::vector<std::string>& vars) {
  // (x, y, ...) -> (x, y + a(x), ...)
  const std::size_t n = vars.size();
  Poly y = Poly::variable(1, n), g = P(a, vars);
  return {RationalMap(n, {{1, y + g}}), RationalMap(n, {{1, y - g}}), AutVerification::exact_identity, "shear"};
}

}  // namespace

TEST_CASE("rational map basics") {
  auto id = RationalMap::identity(3);
  CHECK(id.changed().empty());
  CHECK(id.is_linear());
  RationalMap m(2, {{0, P("x")}, {1, P("2*y")}}, Poly::constant(2, 2), NowhereZero::assumed);
  // constant denominators are folded and the unchanged entry is dropped
  CHECK(m.is_polynomial());
  CHECK(m.status() == NowhereZero::proven_constant);
  CHECK(m.changed().size() == 1);
  CHECK(m.component(0) == P("1/2*x"));
  CHECK(m.component(1) == P("y"));
  CHECK_THROWS_AS(RationalMap(2, {{0, P("x")}}, Poly(2), NowhereZero::assumed), DomainError);
  CHECK_THROWS_AS(RationalMap(2, {{5, P("x")}}), DomainError);

  RationalMap r(2, {{0, P("x")}}, P("y + 1"), NowhereZero::sampled);
  std::vector<Rational> p{3, 1}, bad{3, -1};
  CHECK((*r.eval(p))[0] == Rational(3, 2));
  CHECK((*r.eval(p))[1] == 1);
  CHECK(!r.eval(bad));
}

TEST_CASE("linear and translation maps") {
  auto l = RationalMap::linear(RatMatrix::from_rows({{1, 2}, {0, 1}}));
  CHECK(l.component(0) == P("x + 2*y"));
  CHECK(l.component(1) == P("y"));
  std::vector<Rational> v{0, 5};
  auto t = RationalMap::translation(v);
  CHECK(t.changed().size() == 1);
  CHECK(t.component(1) == P("y + 5"));
  CHECK(!t.is_linear());
}

TEST_CASE("automorphism verification") {
  CHECK(verify_automorphism(shear_y("x^3", kXY)).empty());
  Automorphism bad = shear_y("x^3", kXY);
  bad.inverse = RationalMap(2, {{1, P("y - x^2")}});
  CHECK(!verify_automorphism(bad).empty());

  // (a, b) -> (a, a b) with inverse (a, b / a): a fraction-field identity
  Automorphism frac{RationalMap(2, {{1, P("x*y")}}),
                    RationalMap(2, {{0, P("x^2")}, {1, P("y")}}, P("x"), NowhereZero::assumed),
                    AutVerification::fraction_field_identity, "scale"};
  CHECK(verify_automorphism(frac) == "");
  CHECK(frac.status() == NowhereZero::assumed);

  Automorphism mislabeled = shear_y("x", kXY);
  mislabeled.verification = AutVerification::fraction_field_identity;
  CHECK(!verify_automorphism(mislabeled).empty());
}

TEST_CASE("substitute_rational clears denominators or fails") {
  RationalMap inv(2, {{0, P("x^2")}, {1, P("y")}}, P("x"), NowhereZero::assumed);  // (x, y / x)
  CHECK(substitute_rational(P("x*y + x"), inv) == P("y + x"));
  CHECK_THROWS_AS(substitute_rational(P("y"), inv), DomainError);
  CHECK(substitute_rational(P("x^2"), inv) == P("x^2"));
}

TEST_CASE("segre of x + x^2") {
  std::vector<std::string> x{"x"}, xt{"x", "t"};
  PolyMap g = segre_extend(M({"x + x^2"}, x));
  CHECK(g == M({"x + t*x^2", "t"}, xt));
  CHECK_THROWS_AS(segre_extend(M({"x + 1"}, x)), DomainError);
}

TEST_CASE("extend of (x + y^3, y)") {
  PolyMap f = M({"x + y^3", "y"}, kXY);
  CHECK(apply_move(f, Move::extend(2, 1)) == M({"x + y^3", "y", "z"}, kXYZ));
  CHECK_THROWS_AS(apply_move(f, Move::extend(3, 1)), DomainError);
}

TEST_CASE("post-composition reproduces the quadratic elimination shape") {
  // (x + t*q, y + c, t) followed by (X - t^2 Y, Y, t)
  std::vector<std::string> v{"x", "y", "t"};
  PolyMap before = M({"x + t*x^2 + t^2*y + t^2*x^3", "y + x^3", "t"}, v);
  Automorphism a1{RationalMap(3, {{0, P("x - t^2*y", v)}}), RationalMap(3, {{0, P("x + t^2*y", v)}}),
                  AutVerification::exact_identity, "A1"};
  REQUIRE(verify_automorphism(a1).empty());
  CHECK(apply_move(before, Move::post(a1)) == M({"x + t*x^2", "y + x^3", "t"}, v));
}

TEST_CASE("certificates verify and reject tampering") {
  PolyMap f = M({"x + y^3", "y"}, kXY);
  CertificateBuilder b(f);
  b.extend(1).pre(shear_y("x^2 + z", kXYZ)).post(shear_y("x", kXYZ).inverted());
  Certificate c = b.finish();
  CHECK(c.moves.size() == 3);
  CHECK(c.intermediates.back() == c.target);
  auto v = verify_certificate(c);
  CHECK(v.valid);
  CHECK(v.moves_checked == 3);
  CHECK(v.weakest == NowhereZero::proven_constant);
  CHECK(fiber_transport_check(c, 7, 30).ok());

  Certificate tampered = c;
  Automorphism broken = *tampered.moves[1].automorphism;
  broken.inverse = RationalMap(3, {{1, P("y - x^2", kXYZ)}});
  tampered.moves[1].automorphism = std::make_shared<const Automorphism>(broken);
  auto tv = verify_certificate(tampered);
  CHECK(!tv.valid);
  REQUIRE(tv.failing_move);
  CHECK(*tv.failing_move == 1);

  Certificate wrong_target = c;
  wrong_target.target = M({"x", "y", "z"}, kXYZ);
  CHECK(!verify_certificate(wrong_target).valid);
  auto fr = fiber_transport_check(wrong_target, 7, 30);
  CHECK(!fr.ok());
  CHECK(fr.mismatches > 0);
  REQUIRE(fr.first_mismatch);

  Certificate empty{f, f, {}, {}};
  CHECK(verify_certificate(empty).valid);
  CHECK(fiber_transport_check(empty, 1, 10).ok());
}

TEST_CASE("segre moves and builder append") {
  PolyMap f = M({"x + y^2", "y"}, kXY);
  CertificateBuilder b(f);
  b.segre();
  Certificate first = b.finish();
  CertificateBuilder b2(first.target);
  b2.extend(2);
  b.append(b2.finish());
  Certificate c = b.finish();
  CHECK(c.moves.size() == 2);
  CHECK(c.target.varcount() == 5);
  CHECK(verify_certificate(c).valid);
  CHECK(fiber_transport_check(c, 3, 25).ok());
  CHECK_THROWS_AS(b.append(first), DomainError);
}

TEST_CASE("fiber transport with a rational pre-composition") {
  // F = (x, x y) composed with the inverse of (a, a b) yields (x, y)
  PolyMap f = M({"x", "x*y"}, kXY);
  Automorphism s{RationalMap(2, {{0, P("x^2")}, {1, P("y")}}, P("x"), NowhereZero::sampled),
                 RationalMap(2, {{1, P("x*y")}}), AutVerification::fraction_field_identity, "unscale"};
  CertificateBuilder b(f);
  b.pre(s);
  Certificate c = b.finish();
  CHECK(c.target == PolyMap::identity(2));
  auto v = verify_certificate(c);
  CHECK(v.valid);
  CHECK(v.weakest == NowhereZero::sampled);
  CHECK(fiber_transport_check(c, 11, 40).ok());
}
