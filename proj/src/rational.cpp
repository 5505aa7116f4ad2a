#include "jacred/rational.hpp"

#include <functional>

#include "jacred/error.hpp"

namespace jacred {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw DomainError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

std::size_t hash_value(const Rational& q) {
  // Low limbs of numerator and denominator are enough for bucketing.
  const auto limb = [](const mpz_class& z) -> std::size_t {
    return mpz_size(z.get_mpz_t()) == 0 ? 0 : static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
  };
  std::size_t h = limb(q.get_num()) * 0x9E3779B97F4A7C15ull;
  h ^= limb(q.get_den()) + 0x7F4A7C15ull + (h << 6) + (h >> 2);
  return h ^ static_cast<std::size_t>(sgn(q) + 1);
}

}  // namespace jacred
