#include "jacred/corpus.hpp"

#include "jacred/error.hpp"

namespace jacred {

namespace {

struct Raw {
  const char* id;
  const char* description;
  const char* text;
  ExpectedAttributes expected;
};

// The Pinchuk map in the form given in van den Essen's book on polynomial
// automorphisms:
//   t = xy - 1, h = t(xt + 1), f = (xt + 1)^2 (t^2 + y)
//   P = f + h
//   Q = -t^2 - 6th(h + 1) - u(f, h),
//   u = 170fh + 91h^2 + 195fh^2 + 69h^3 + 75fh^3 + (75/4)h^4
// The expansion below is checked in the tests against that closed form and
// against j(P, Q) = t^2 + (t + f(13 + 15h))^2 + f^2.
constexpr const char* kPinchuk =
    "vars x y\n"
    "meta source van den Essen, Polynomial Automorphisms and the Jacobian Conjecture\n"
    "poly P = x^6*y^4 - 4*x^5*y^3 + 3*x^4*y^3 + 6*x^4*y^2 - 7*x^3*y^2 - 4*x^3*y + 3*x^2*y^2 + 5*x^2*y"
    " + x^2 - 3*x*y - x + y\n"
    "poly Q = -75*x^15*y^10 + 750*x^14*y^9 - 450*x^13*y^9 - 3375*x^13*y^8 + 15045/4*x^12*y^8"
    " + 9000*x^12*y^7 - 1125*x^11*y^8 - 13890*x^11*y^7 - 15750*x^11*y^6 + 7575*x^10*y^7"
    " + 29715*x^10*y^6 + 18900*x^10*y^5 - 1500*x^9*y^7 - 21959*x^9*y^6 - 40530*x^9*y^5"
    " - 15750*x^9*y^4 + 15375/2*x^8*y^6 + 35679*x^8*y^5 + 72975/2*x^8*y^4 + 9000*x^8*y^3"
    " - 1125*x^7*y^6 - 16298*x^7*y^5 - 35385*x^7*y^4 - 21630*x^7*y^3 - 3375*x^7*y^2"
    " + 3975*x^6*y^5 + 36833/2*x^6*y^4 + 21805*x^6*y^3 + 8115*x^6*y^2 + 750*x^6*y"
    " - 450*x^5*y^5 - 5409*x^5*y^4 - 11936*x^5*y^3 - 8085*x^5*y^2 - 1740*x^5*y - 75*x^5"
    " + 3525/4*x^4*y^4 + 3688*x^4*y^3 + 8953/2*x^4*y^2 + 1629*x^4*y + 645/4*x^4"
    " - 75*x^3*y^4 - 560*x^3*y^3 - 1485*x^3*y^2 - 946*x^3*y - 134*x^3 + 30*x^2*y^3"
    " + 569/2*x^2*y^2 + 417*x^2*y + 199/2*x^2 - 5*x*y^2 - 164*x*y - 61*x + 50*y + 33/4\n";

const std::vector<Raw>& table() {
  static const std::vector<Raw> raw{
      {"identity2", "identity map of the plane", "vars x y\npoly f1 = x\npoly f2 = y\n",
       {.dex = 1, .mfs_observed = 1, .keller = true, .yagzhev = true, .druzkowski = true}},
      {"druzkowski-toy", "cubic linear map (u, v + (u+v)^3)", "vars u v\npoly f1 = u\npoly f2 = v + (u + v)^3\n",
       {.keller = false, .yagzhev = true, .druzkowski = true}},
      {"triangular", "triangular Keller map (x + y^3, y)", "vars x y\npoly f1 = x + y^3\npoly f2 = y\n",
       {.dex = 1, .mfs_observed = 1, .keller = true, .yagzhev = true, .druzkowski = true}},
      {"cube-x", "(x^3, y): three complex preimages, one real", "vars x y\npoly f1 = x^3\npoly f2 = y\n",
       {.dex = 3, .mfs_observed = 1, .keller = false, .yagzhev = false, .druzkowski = false}},
      {"cubic-fold", "(x^3 - 3x, y): up to three real preimages", "vars x y\npoly f1 = x^3 - 3*x\npoly f2 = y\n",
       {.dex = 3, .mfs_observed = 3, .keller = false}},
      {"quartic-line", "the one-variable map x^4", "vars x\npoly f1 = x^4\n", {.keller = false}},
      {"yagzhev-nilpotent", "Keller cubic homogeneous map (x + y^3, y + z^3, z)",
       "vars x y z\npoly f1 = x + y^3\npoly f2 = y + z^3\npoly f3 = z\n",
       {.keller = true, .yagzhev = true, .druzkowski = true}},
      {"yagzhev-non-keller", "cubic homogeneous map with non-nilpotent J(H)",
       "vars x y\npoly f1 = x + x^3\npoly f2 = y + x^2*y\n", {.keller = false, .yagzhev = true, .druzkowski = false}},
      {"nilpotent-4", "triangular Keller chain (x1 + x2^3, x2 + x3^3, x3 + x4^3, x4)",
       "vars x1 x2 x3 x4\npoly f1 = x1 + x2^3\npoly f2 = x2 + x3^3\npoly f3 = x3 + x4^3\npoly f4 = x4\n",
       {.keller = true, .yagzhev = true, .druzkowski = true}},
      {"druzkowski-rank1", "cubic linear Keller map with A = [[1, -1], [1, -1]]",
       "vars u v\npoly f1 = u + (u - v)^3\npoly f2 = v + (u - v)^3\n",
       {.keller = true, .yagzhev = true, .druzkowski = true}},
      {"yagzhev-mixed", "cubic homogeneous (x + x^2*y, y - x*y^2) with det J(H) != 0",
       "vars x y\npoly f1 = x + x^2*y\npoly f2 = y - x*y^2\n", {.keller = false, .yagzhev = true, .druzkowski = false}},
      {"yagzhev-triangular-3", "triangular Keller map (x + y*z^2, y + z^3, z)",
       "vars x y z\npoly f1 = x + y*z^2\npoly f2 = y + z^3\npoly f3 = z\n",
       {.keller = true, .yagzhev = true, .druzkowski = false}},
      {"yagzhev-shifted-3", "triangular Keller map (x - y^3 + z^3, y + z^3, z)",
       "vars x y z\npoly f1 = x - y^3 + z^3\npoly f2 = y + z^3\npoly f3 = z\n",
       {.keller = true, .yagzhev = true, .druzkowski = false}},
      {"yagzhev-product-4", "cubic homogeneous (x1 + x1*x2*x3, x2, x3, x4 + x1^3), not Keller",
       "vars x1 x2 x3 x4\npoly f1 = x1 + x1*x2*x3\npoly f2 = x2\npoly f3 = x3\npoly f4 = x4 + x1^3\n",
       {.keller = false, .yagzhev = true, .druzkowski = false}},
      {"pinchuk", "Pinchuk map of total degree 25 (nonsingular, not injective)", kPinchuk,
       {.dex = 6,
        .mfs_observed = 2,
        .sag_external = 1,
        .keller = false,
        .yagzhev = false,
        .druzkowski = false,
        .reference_cubic_dim = 101,
        .reference_yagzhev_dim = 203}},
  };
  return raw;
}

}  // namespace

std::vector<std::string> builtin_ids() {
  std::vector<std::string> out;
  for (const auto& r : table()) out.emplace_back(r.id);
  return out;
}

ExampleEntry builtin_example(std::string_view id) {
  for (const auto& r : table()) {
    if (id == r.id) return {r.id, r.description, parse_map(r.text), r.expected};
  }
  throw DomainError("unknown example id '" + std::string(id) + "'");
}

}  // namespace jacred
