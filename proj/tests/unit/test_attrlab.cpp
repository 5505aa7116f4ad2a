#include <doctest.h>

#include "helpers.hpp"
#include "jacred/attrlab.hpp"
#include "jacred/corpus.hpp"
#include "jacred/error.hpp"

using namespace jacred;
using testing::M;
using testing::P;

namespace {

const std::vector<std::string> kXY{"x", "y"};

PolyMap pinchuk() { return PolyMap(2, builtin_example("pinchuk").document.polys()); }

}  // namespace

TEST_CASE("generic_rotation") {
  auto cube = generic_rotation(M({"x^3", "y"}, kXY), 1);
  CHECK(cube.attempts == 1);
  CHECK(cube.map == M({"x^3", "y"}, kXY));
  CHECK(verify_automorphism(cube.rotation).empty());

  auto xy = generic_rotation(M({"x*y", "y"}, kXY), 1);
  CHECK(xy.attempts > 1);
  CHECK(generic_for_elimination(xy.map));
  CHECK(!generic_for_elimination(M({"x*y", "y"}, kXY)));
  CHECK(verify_automorphism(xy.rotation).empty());

  // (u, v + (u + v)^3): the identity leaves a cube of u - a as resultant
  auto toy = generic_rotation(M({"x", "y + (x + y)^3"}, kXY), 1);
  CHECK(toy.attempts > 1);

  auto pin = generic_rotation(pinchuk(), 7);
  CHECK(pin.attempts <= 5);
  CHECK(generic_for_elimination(pin.map));
}

TEST_CASE("fiber_count_real examples") {
  auto a = fiber_count_real(M({"x^3", "y"}, kXY), std::vector<Rational>{8, 0});
  CHECK(a.real_count == 1);
  CHECK(a.complex_count == 3);
  CHECK(a.simple);
  auto b = fiber_count_real(M({"x^3 - 3*x", "y"}, kXY), std::vector<Rational>{0, 0});
  CHECK(b.real_count == 3);
  auto c = fiber_count_real(M({"x^3", "y"}, kXY), std::vector<Rational>{0, 0});
  CHECK(!c.simple);
  CHECK(c.complex_count == 1);
}

TEST_CASE("dex2 on small maps") {
  CHECK(dex2(PolyMap::identity(2), 1).value == 1);
  CHECK(dex2(M({"x^3", "y"}, kXY), 1).value == 3);
  CHECK(dex2(M({"x^3 - 3*x", "y"}, kXY), 2).value == 3);
  CHECK(dex2(M({"x + y^3", "y"}, kXY), 3).value == 1);
  CHECK(dex2(M({"x", "y + (x + y)^3"}, kXY), 1).value == 3);
  // complex squaring as a real plane map: four complex preimages, two real
  CHECK(dex2(M({"x^2 - y^2", "2*x*y"}, kXY), 4).value == 4);
  CHECK_THROWS_AS(dex2(M({"x + y", "x + y"}, kXY), 1), DomainError);
}

TEST_CASE("dex2 invariances") {
  PolyMap f = M({"x^3 - 3*x + y^2", "y + x^2"}, kXY);
  const auto d = dex2(f, 1).value;
  // pre-composition with a linear automorphism, post-composition with a translation
  PolyMap g = f.compose(M({"x + 2*y", "y - x"}, kXY));
  PolyMap h(2, {f[0] + P("5"), f[1] - P("1/3")});
  CHECK(dex2(g, 2).value == d);
  CHECK(dex2(h, 3).value == d);
}

TEST_CASE("Pinchuk dex is 6") {
  auto d = dex2(pinchuk(), 2024);
  CHECK(d.value == 6);
}

TEST_CASE("mfs_sample on small maps") {
  auto id = mfs_sample(PolyMap::identity(2), 1, 20);
  CHECK(id.mfs_observed == 1);
  CHECK(*id.dex == 1);
  CHECK(id.parity_consistent);
  auto cube = mfs_sample(M({"x^3", "y"}, kXY), 1, 40);
  CHECK(cube.mfs_observed == 1);
  CHECK(*cube.dex == 3);
  CHECK(cube.parity_consistent);
  CHECK(cube.samples == 40);
  auto fold = mfs_sample(M({"x^3 - 3*x", "y"}, kXY), 5, 60);
  CHECK(fold.mfs_observed == 3);
  CHECK(fold.parity_consistent);
  auto sq = mfs_sample(M({"x^2 - y^2", "2*x*y"}, kXY), 5, 30);
  CHECK(*sq.dex == 4);
  CHECK(sq.mfs_observed == 2);
  CHECK(sq.parity_consistent);
}

TEST_CASE("mfs_sample is deterministic") {
  auto a = mfs_sample(M({"x^3 - 3*x + y^2", "y + x^2"}, kXY), 11, 30);
  auto b = mfs_sample(M({"x^3 - 3*x + y^2", "y + x^2"}, kXY), 11, 30);
  CHECK(a.real_count_histogram == b.real_count_histogram);
  CHECK(a.mfs_observed == b.mfs_observed);
  CHECK(a.genericity_retries == b.genericity_retries);
}

TEST_CASE("minimal_poly_coordinate examples") {
  std::vector<std::string> v{"x", "y", "Y1", "Y2"};
  auto id = minimal_poly_coordinate(PolyMap::identity(2), 0);
  CHECK(id.stripped == P("x - Y1", v));
  CHECK(id.degree == 1);
  auto cx = minimal_poly_coordinate(M({"x^3", "y"}, kXY), 0);
  CHECK(cx.stripped == P("x^3 - Y1", v));
  CHECK(cx.degree == 3);
  auto cy = minimal_poly_coordinate(M({"x^3", "y"}, kXY), 1);
  CHECK(cy.stripped == P("y - Y2", v));
  CHECK(cy.degree == 1);
  CHECK(cy.degenerate_power);
  CHECK(cy.resultant == pow(P("y - Y2", v), 3));
  auto sq = minimal_poly_coordinate(M({"x^2 - y^2", "2*x*y"}, kXY), 0);
  CHECK(!sq.degenerate_power);
  CHECK(sq.degree >= 2);
}
