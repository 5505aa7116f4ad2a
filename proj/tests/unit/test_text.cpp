#include <doctest.h>

#include "helpers.hpp"
#include "jacred/corpus.hpp"
#include "jacred/error.hpp"
#include "jacred/random.hpp"

using namespace jacred;
using testing::P;

TEST_CASE("parse a simple document") {
  auto doc = parse_map("vars x y\npoly p = x + (x*y - 1)^2");
  CHECK(doc.vars == std::vector<std::string>{"x", "y"});
  REQUIRE(doc.components.size() == 1);
  CHECK(doc.components[0].first == "p");
  CHECK(doc.components[0].second == P("x^2*y^2 - 2*x*y + x + 1"));
}

TEST_CASE("rational literals are exact") {
  auto doc = parse_map("vars x\npoly p = 3/2*x^2");
  CHECK(doc.components[0].second.coefficient(Monomial::variable(0, 2)) == Rational(3, 2));
  CHECK(parse_poly("6/4", std::vector<std::string>{"x"}) == Poly::constant(1, Rational(3, 2)));
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_map("vars x y\npoly p = x*z");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
    CHECK(std::string(e.what()).find("undeclared variable 'z'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_map("vars x\npoly p = x^-2"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x\npoly p = 2x"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x\npoly p = x/2"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x\npoly p = (x + 1"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x\npoly p = x $ 1"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x x\npoly p = x"), ParseError);
  CHECK_THROWS_AS(parse_map("poly p = x"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x\npoly p = x\npoly p = x"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x\npoly p = 1/0"), ParseError);
  CHECK_THROWS_AS(parse_map("vars x\npoly p = "), ParseError);
  try {
    parse_map("vars x\npoly p = x^-2");
  } catch (const ParseError& e) {
    CHECK(e.column() == 12);
  }
}

TEST_CASE("comments, metadata and unary signs") {
  auto doc = parse_map("# a comment\n\nvars a b\nmeta expected_dex 6\npoly f = -a^2 + +b - -1\n");
  CHECK(doc.meta("expected_dex") == "6");
  CHECK(doc.components[0].second == parse_poly("1 + b - a^2", doc.vars));
}

TEST_CASE("printing is canonical") {
  std::vector<std::string> v{"x", "y"};
  CHECK(print_poly(Poly(2), v) == "0");
  CHECK(print_poly(P("y - 2*x^2 + 1/3 - x*y"), v) == "-2*x^2 - x*y + y + 1/3");
  CHECK(print_poly(P("-1"), v) == "-1");
  CHECK(print_poly(P("x^3*y"), v) == "x^3*y");
}

TEST_CASE("round trip on the shipped corpus") {
  for (const auto& id : builtin_ids()) {
    auto entry = builtin_example(id);
    CHECK(parse_map(print_map(entry.document)) == entry.document);
  }
  CHECK_THROWS_AS(builtin_example("nope"), DomainError);
}

TEST_CASE("round trip on 1000 seeded random polynomials") {
  Rng rng(1000);
  std::vector<std::string> v{"x", "y", "z", "w"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Poly::Term> ts;
    const auto terms = rng.uniform(0, 6);
    for (int k = 0; k < terms; ++k) {
      std::vector<unsigned> e(4);
      for (auto& x : e) x = static_cast<unsigned>(rng.uniform(0, 3));
      ts.emplace_back(Monomial::from_exponents(e), rng.rational(1000, 12));
    }
    Poly p = Poly::from_terms(4, std::move(ts));
    CHECK(parse_poly(print_poly(p, v), v) == p);
  }
}

TEST_CASE("fresh variable names avoid clashes") {
  auto names = extend_var_names({"x", "w1"}, 4);
  CHECK(names == std::vector<std::string>{"x", "w1", "w2", "w3"});
  CHECK(default_var_names(2) == std::vector<std::string>{"x1", "x2"});
}
