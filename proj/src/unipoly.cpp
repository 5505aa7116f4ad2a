#include "jacred/unipoly.hpp"

#include <algorithm>
#include <sstream>

#include "jacred/error.hpp"

namespace jacred {

UniPoly::UniPoly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Degree UniPoly::degree() const {
  return coeffs_.empty() ? Degree::minus_infinity() : Degree::of(static_cast<unsigned>(coeffs_.size() - 1));
}

const Rational& UniPoly::leading_coefficient() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return UniPoly(std::move(out));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  const Rational lc = coeffs_.back();
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c /= lc;
  return UniPoly(std::move(out));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> out = coeffs_;
  for (auto& c : out) c = -c;
  return UniPoly(std::move(out));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
  return UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] - b[k];
  return UniPoly(std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(out));
}

UniPoly operator*(const Rational& c, const UniPoly& p) {
  std::vector<Rational> out = p.coeffs_;
  for (auto& x : out) x *= c;
  return UniPoly(std::move(out));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

DivMod divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  auto ac = a.coefficients();
  std::vector<Rational> rem(ac.begin(), ac.end());
  const std::size_t db = b.coefficients().size() - 1;
  if (rem.size() <= db) return {UniPoly(), a};
  std::vector<Rational> quo(rem.size() - db);
  const Rational& lc = b.leading_coefficient();
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    Rational f = rem[k] / lc;
    quo[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= f * b[j];
  }
  rem.resize(db);
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

UniPoly to_unipoly(const Poly& p, std::size_t var) {
  std::vector<Rational> out;
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(var);
    if (m.degree() != e) throw DomainError("to_unipoly: polynomial involves other variables");
    if (out.size() <= e) out.resize(e + 1);
    out[e] += c;
  }
  return UniPoly(std::move(out));
}

Poly from_unipoly(const UniPoly& u, std::size_t var, std::size_t varcount) {
  std::vector<Poly::Term> terms;
  auto cs = u.coefficients();
  for (std::size_t k = 0; k < cs.size(); ++k) {
    if (cs[k] != 0) terms.emplace_back(Monomial::variable(var, static_cast<unsigned>(k)), cs[k]);
  }
  return Poly::from_terms(varcount, std::move(terms));
}

}  // namespace jacred
