#include "jacred/monomial.hpp"

#include <algorithm>

#include "jacred/error.hpp"

namespace jacred {

Monomial Monomial::from_exponents(std::span<const unsigned> exponents) {
  Monomial m;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] == 0) continue;
    m.factors_.emplace_back(static_cast<std::uint32_t>(v), exponents[v]);
    m.degree_ += exponents[v];
  }
  return m;
}

Monomial Monomial::variable(std::size_t var, unsigned exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(static_cast<std::uint32_t>(var), exponent);
    m.degree_ = exponent;
  }
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
    m.degree_ += e;
  }
  return m;
}

unsigned Monomial::exponent(std::size_t var) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), var,
                             [](const Factor& f, std::size_t v) { return f.first < v; });
  return (it != factors_.end() && it->first == var) ? it->second : 0;
}

std::vector<unsigned> Monomial::exponents(std::size_t varcount) const {
  std::vector<unsigned> out(varcount, 0);
  for (const auto& [v, e] : factors_) {
    if (v >= varcount) throw DomainError("monomial uses a variable beyond the ambient count");
    out[v] = e;
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  auto it = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (it != other.factors_.end() && it->first < v) ++it;
    if (it == other.factors_.end() || it->first != v || it->second < e) return false;
  }
  return true;
}

Monomial Monomial::cofactor_in(const Monomial& other) const {
  Monomial out;
  auto it = factors_.begin();
  for (const auto& [v, e] : other.factors_) {
    while (it != factors_.end() && it->first < v) ++it;
    unsigned sub = (it != factors_.end() && it->first == v) ? it->second : 0;
    if (sub > e) throw DomainError("monomial does not divide");
    if (e - sub > 0) out.factors_.emplace_back(v, e - sub);
  }
  if (degree_ > other.degree_) throw DomainError("monomial does not divide");
  out.degree_ = other.degree_ - degree_;
  return out;
}

std::pair<Monomial, unsigned> Monomial::split_off(std::size_t var) const {
  Monomial rest;
  unsigned removed = 0;
  for (const auto& f : factors_) {
    if (f.first == var) {
      removed = f.second;
    } else {
      rest.factors_.push_back(f);
    }
  }
  rest.degree_ = degree_ - removed;
  return {std::move(rest), removed};
}

Monomial Monomial::renumbered(std::span<const std::size_t> images) const {
  std::vector<Factor> f;
  f.reserve(factors_.size());
  for (const auto& [v, e] : factors_) {
    if (v >= images.size()) throw DomainError("renumbering table too short");
    f.emplace_back(static_cast<std::uint32_t>(images[v]), e);
  }
  return from_factors(std::move(f));
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      out.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  const std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& fa = a.factors_[k];
    const auto& fb = b.factors_[k];
    if (fa.first != fb.first) {
      // The monomial that mentions the earlier variable has the larger
      // exponent there.
      return fa.first < fb.first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (fa.second != fb.second) return fa.second <=> fb.second;
  }
  return a.factors_.size() <=> b.factors_.size();
}

std::size_t Monomial::hash() const {
  std::size_t h = degree_;
  for (const auto& [v, e] : factors_) {
    h ^= (static_cast<std::size_t>(v) * 0x9E3779B97F4A7C15ull + e) + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace jacred
