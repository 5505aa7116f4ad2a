#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "jacred/polymap.hpp"
#include "jacred/text.hpp"

namespace testing {

inline jacred::Poly P(std::string_view expr, std::vector<std::string> vars = {"x", "y"}) {
  return jacred::parse_poly(expr, vars);
}

inline jacred::PolyMap M(std::vector<std::string_view> exprs, std::vector<std::string> vars) {
  std::vector<jacred::Poly> comps;
  for (auto e : exprs) comps.push_back(jacred::parse_poly(e, vars));
  return jacred::PolyMap(vars.size(), std::move(comps));
}

inline jacred::Rational Q(const char* s) { return jacred::parse_rational(s); }

}  // namespace testing
