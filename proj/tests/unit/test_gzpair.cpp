#include <doctest.h>

#include "helpers.hpp"
#include "jacred/corpus.hpp"
#include "jacred/error.hpp"
#include "jacred/gzpair.hpp"
#include "jacred/random.hpp"

using namespace jacred;
using testing::M;
using testing::P;

namespace {

Poly reassemble(const std::vector<CubeTerm>& ts, std::size_t n) {
  Poly s(n);
  for (const auto& t : ts) s = s + t.coefficient * pow(t.form, 3);
  return s;
}

PolyMap random_cubic_homogeneous(Rng& rng, std::size_t n) {
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Poly::Term> ts{{Monomial::variable(i), Rational(1)}};
    const auto terms = rng.uniform(0, 3);
    for (int k = 0; k < terms; ++k) {
      std::vector<unsigned> e(n);
      for (int d = 0; d < 3; ++d) ++e[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))];
      ts.emplace_back(Monomial::from_exponents(e), rng.rational(4, 2));
    }
    comps.push_back(Poly::from_terms(n, std::move(ts)));
  }
  return PolyMap(n, std::move(comps));
}

}  // namespace

TEST_CASE("decompose_cubes examples") {
  auto a = decompose_cubes(P("x^3"));
  REQUIRE(a.size() == 1);
  CHECK(a[0].coefficient == 1);
  CHECK(a[0].form == P("x"));
  std::vector<std::string> xyz{"x", "y", "z"};
  auto b = decompose_cubes(P("6*x*y*z", xyz));
  CHECK(b.size() == 7);
  CHECK(reassemble(b, 3) == P("6*x*y*z", xyz));
  auto c = decompose_cubes(P("6*x^2*y"));
  CHECK(reassemble(c, 2) == P("6*x^2*y"));
  CHECK(decompose_cubes(Poly(2)).empty());
  CHECK_THROWS_AS(decompose_cubes(P("x^2")), DomainError);
  CHECK_THROWS_AS(decompose_cubes(P("x^3 + x")), DomainError);
}

TEST_CASE("decompose_cubes reassembles random cubic forms") {
  Rng rng(31);
  std::vector<std::string> v{"a", "b", "c", "d"};
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Poly::Term> ts;
    for (int k = 0; k < 5; ++k) {
      std::vector<unsigned> e(4);
      for (int d = 0; d < 3; ++d) ++e[static_cast<std::size_t>(rng.uniform(0, 3))];
      ts.emplace_back(Monomial::from_exponents(e), rng.rational(9, 4));
    }
    Poly h = Poly::from_terms(4, std::move(ts));
    CHECK(reassemble(decompose_cubes(h), 4) == h);
  }
}

TEST_CASE("pair_down on the toy map") {
  std::vector<std::string> uv{"u", "v"};
  RatMatrix a = RatMatrix::from_rows({{0, 0}, {1, 1}});
  PolyMap f = M({"u", "v + (u + v)^3"}, uv);
  auto p = pair_down(f, a);
  CHECK(p.B == RatMatrix::from_rows({{1, 1}}));
  CHECK(p.C == RatMatrix::from_rows({{1}, {0}}));
  CHECK(p.G == M({"x + x^3"}, {"x"}));
  CHECK(verify_pairing(p).valid);

  CHECK_THROWS_AS(pair_down(f, RatMatrix::from_rows({{0, 0}, {1, 2}})), DomainError);
  CHECK_THROWS_AS(pair_down(PolyMap::identity(2), RatMatrix(2, 2)), DomainError);
}

TEST_CASE("pair_up on x + x^3 and the round trip") {
  auto p = pair_up(M({"x + x^3"}, {"x"}));
  CHECK(p.r == 1);
  CHECK(p.A == RatMatrix::from_rows({{0, 0}, {1, 1}}));
  CHECK(p.F == M({"x", "y + (x + y)^3"}, {"x", "y"}));
  auto back = pair_down(p.F, p.A);
  CHECK(back.G == p.G);
}

TEST_CASE("verify_pairing rejects tampering") {
  auto p = pair_up(M({"x + x^3"}, {"x"}));
  auto k = p;
  k.B = RatMatrix::from_rows({{1, 0}});
  auto v = verify_pairing(k);
  CHECK(!v.valid);
  CHECK(v.failed_axiom == 2);
  auto bc = p;
  bc.C = RatMatrix::from_rows({{2}, {0}});
  CHECK(verify_pairing(bc).failed_axiom == 1);
  auto g = p;
  g.G = M({"x + 2*x^3"}, {"x"});
  CHECK(verify_pairing(g).failed_axiom == 3);
}

TEST_CASE("pairing of the identity pads with basis forms") {
  auto p = pair_up(PolyMap::identity(2));
  CHECK(p.r == 2);
  CHECK(p.A.rows() == 4);
  CHECK(verify_pairing(p).valid);
  auto c = pairing_to_equivalence(p);
  CHECK(verify_certificate(c).valid);
  // the shear is the only nonlinear move; the partner F is not linear
  std::size_t nonlinear = 0;
  for (const auto& m : c.moves) {
    if (m.automorphism && !m.automorphism->forward.is_linear()) ++nonlinear;
  }
  CHECK(nonlinear == 1);
}

TEST_CASE("pairing certificates on the toy map") {
  auto p = pair_up(M({"x + x^3"}, {"x"}));
  auto c = pairing_to_equivalence(p);
  CHECK(c.moves.size() == 4);
  CHECK(c.source == p.G);
  CHECK(c.target == p.F);
  CHECK(verify_certificate(c).valid);
  CHECK(fiber_transport_check(c, 1, 20).ok());
}

TEST_CASE("round trip on corpus and random cubic homogeneous maps") {
  std::vector<PolyMap> maps;
  for (const auto& id : builtin_ids()) {
    auto e = builtin_example(id);
    PolyMap f(e.document.vars.size(), e.document.polys());
    if (f.is_square() && is_yagzhev(f).ok && f.varcount() <= 4) maps.push_back(f);
  }
  Rng rng(77);
  while (maps.size() < 12) maps.push_back(random_cubic_homogeneous(rng, static_cast<std::size_t>(rng.uniform(2, 4))));
  for (const auto& g : maps) {
    auto p = pair_up(g);
    CHECK(p.A.rows() == g.varcount() + p.r);
    CHECK(rank(p.A) == g.varcount());
    CHECK(verify_pairing(p).valid);
    CHECK(is_druzkowski(p.F).shape.ok);
    auto back = pair_down(p.F, p.A);
    CHECK(back.G == g);
    auto c = pairing_to_equivalence(p);
    CHECK(verify_certificate(c).valid);
    CHECK(fiber_transport_check(c, 2, 5).ok());
  }
}

TEST_CASE("random rank-2 matrix in dimension 4") {
  Rng rng(12);
  RatMatrix u(4, 2), w(2, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      u(i, j) = rng.uniform(-3, 3);
      w(j, i) = rng.uniform(-3, 3);
    }
  }
  RatMatrix a = u * w;
  REQUIRE(rank(a) == 2);
  auto p = pair_down(cubic_linear_map(a), a);
  CHECK(p.G.varcount() == 2);
  CHECK(verify_pairing(p).valid);
  CHECK(verify_certificate(pairing_to_equivalence(p)).valid);
}
