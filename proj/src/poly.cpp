#include "jacred/poly.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <unordered_map>

#include "jacred/error.hpp"

namespace jacred {

namespace {

using TermVec = std::vector<Poly::Term>;

const std::shared_ptr<const TermVec>& empty_terms() {
  static const auto empty = std::make_shared<const TermVec>();
  return empty;
}

void require_same_ring(const Poly& a, const Poly& b, const char* op) {
  if (a.varcount() != b.varcount()) {
    throw DomainError(std::string(op) + ": variable count mismatch (" + std::to_string(a.varcount()) +
                      " vs " + std::to_string(b.varcount()) + ")");
  }
}

void sort_terms(TermVec& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Poly::Term& x, const Poly::Term& y) { return grlex(x.first, y.first) > 0; });
}

}  // namespace

unsigned Degree::value() const {
  if (!value_) throw DomainError("degree of the zero polynomial is minus infinity");
  return *value_;
}

Poly::Poly(std::size_t varcount) : varcount_(varcount), terms_(empty_terms()) {}

Poly Poly::constant(std::size_t varcount, const Rational& c) {
  Poly p(varcount);
  if (c != 0) p.terms_ = std::make_shared<const TermVec>(TermVec{{Monomial(), c}});
  return p;
}

Poly Poly::variable(std::size_t var, std::size_t varcount) {
  if (var >= varcount) throw DomainError("variable index out of range");
  // Identity components of large automorphisms reuse these handles.
  static std::mutex mutex;
  static std::unordered_map<std::size_t, std::vector<Poly>> cache;
  std::lock_guard lock(mutex);
  auto& row = cache[varcount];
  if (row.empty()) row.resize(varcount, Poly(varcount));
  if (row[var].is_zero()) row[var] = monomial(varcount, Monomial::variable(var));
  return row[var];
}

Poly Poly::monomial(std::size_t varcount, Monomial m, const Rational& c) {
  if (m.support_end() > varcount) throw DomainError("monomial uses a variable beyond the ambient count");
  Poly p(varcount);
  if (c != 0) p.terms_ = std::make_shared<const TermVec>(TermVec{{std::move(m), c}});
  return p;
}

Poly Poly::from_terms(std::size_t varcount, std::vector<Term> terms) {
  TermAccumulator acc(varcount);
  for (auto& [m, c] : terms) acc.add(m, c);
  return acc.finish();
}

std::span<const Poly::Term> Poly::terms() const { return *terms_; }

bool Poly::is_constant() const { return is_zero() || (size() == 1 && terms()[0].first.is_unit()); }

Rational Poly::constant_term() const {
  if (is_zero()) return 0;
  const auto& last = terms().back();
  return last.first.is_unit() ? last.second : Rational(0);
}

Rational Poly::coefficient(const Monomial& m) const {
  auto ts = terms();
  auto it = std::lower_bound(ts.begin(), ts.end(), m,
                             [](const Term& t, const Monomial& key) { return grlex(t.first, key) > 0; });
  return (it != ts.end() && it->first == m) ? it->second : Rational(0);
}

const Poly::Term& Poly::leading_term() const {
  if (is_zero()) throw DomainError("leading term of the zero polynomial");
  return terms().front();
}

Degree Poly::degree() const {
  return is_zero() ? Degree::minus_infinity() : Degree::of(terms().front().first.degree());
}

Degree Poly::degree_in(std::size_t var) const {
  if (is_zero()) return Degree::minus_infinity();
  unsigned d = 0;
  for (const auto& [m, c] : terms()) d = std::max(d, m.exponent(var));
  return Degree::of(d);
}

bool Poly::involves(std::size_t var) const {
  for (const auto& [m, c] : terms()) {
    if (m.exponent(var) > 0) return true;
  }
  return false;
}

bool Poly::is_homogeneous() const {
  if (is_zero()) return true;
  const unsigned d = terms().front().first.degree();
  return terms().back().first.degree() == d;
}

Poly Poly::extended(std::size_t varcount) const {
  if (varcount < varcount_) throw DomainError("extended: cannot shrink the ring");
  Poly p = *this;
  p.varcount_ = varcount;
  return p;
}

Poly Poly::renumbered(std::span<const std::size_t> images, std::size_t varcount) const {
  if (images.size() != varcount_) throw DomainError("renumbered: table length mismatch");
  for (std::size_t v : images) {
    if (v >= varcount) throw DomainError("renumbered: image index out of range");
  }
  TermAccumulator acc(varcount);
  for (const auto& [m, c] : terms()) acc.add(m.renumbered(images), c);
  return acc.finish();
}

Poly Poly::operator-() const {
  if (is_zero()) return *this;
  TermVec out(terms().begin(), terms().end());
  for (auto& t : out) t.second = -t.second;
  Poly p(varcount_);
  p.terms_ = std::make_shared<const TermVec>(std::move(out));
  return p;
}

Poly Poly::adopt_canonical(std::size_t varcount, std::vector<Term> terms) {
  Poly p(varcount);
  if (!terms.empty()) p.terms_ = std::make_shared<const TermVec>(std::move(terms));
  return p;
}

namespace {

Poly merge(const Poly& a, const Poly& b, bool subtract) {
  auto ta = a.terms();
  auto tb = b.terms();
  if (tb.empty()) return a;
  if (ta.empty()) return subtract ? -b : b;
  TermVec out;
  out.reserve(ta.size() + tb.size());
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    int cmp;
    if (i == ta.size()) {
      cmp = -1;
    } else if (j == tb.size()) {
      cmp = 1;
    } else {
      auto o = grlex(ta[i].first, tb[j].first);
      cmp = o > 0 ? 1 : (o < 0 ? -1 : 0);
    }
    if (cmp > 0) {
      out.push_back(ta[i++]);
    } else if (cmp < 0) {
      out.emplace_back(tb[j].first, subtract ? Rational(-tb[j].second) : tb[j].second);
      ++j;
    } else {
      Rational c = subtract ? Rational(ta[i].second - tb[j].second) : Rational(ta[i].second + tb[j].second);
      if (c != 0) out.emplace_back(ta[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return Poly::adopt_canonical(a.varcount(), std::move(out));
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  require_same_ring(a, b, "add");
  return merge(a, b, false);
}

Poly operator-(const Poly& a, const Poly& b) {
  require_same_ring(a, b, "subtract");
  return merge(a, b, true);
}

Poly operator*(const Rational& c, const Poly& p) {
  if (c == 0) return Poly(p.varcount());
  if (c == 1) return p;
  TermVec out(p.terms().begin(), p.terms().end());
  for (auto& t : out) t.second *= c;
  return Poly::adopt_canonical(p.varcount(), std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(a, b, "multiply");
  if (a.is_zero() || b.is_zero()) return Poly(a.varcount());
  if (a.is_constant()) return a.terms()[0].second * b;
  if (b.is_constant()) return b.terms()[0].second * a;
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) {
    // Multiplying by a single term preserves the order.
    const auto& [m, c] = small.terms()[0];
    TermVec out;
    out.reserve(large.size());
    for (const auto& [lm, lc] : large.terms()) out.emplace_back(lm * m, lc * c);
    return Poly::adopt_canonical(a.varcount(), std::move(out));
  }
  TermAccumulator acc(a.varcount());
  for (const auto& [m, c] : small.terms()) acc.add_product(large, m, c);
  return acc.finish();
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.varcount() != b.varcount()) return false;
  if (a.shares_storage_with(b)) return true;
  auto ta = a.terms();
  auto tb = b.terms();
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].first != tb[i].first || ta[i].second != tb[i].second) return false;
  }
  return true;
}

std::size_t Poly::hash() const {
  std::size_t h = varcount_;
  for (const auto& [m, c] : terms()) {
    h ^= m.hash() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    h ^= hash_value(c) + (h << 6) + (h >> 2);
  }
  return h;
}

Poly pow(const Poly& p, unsigned exponent) {
  Poly result = Poly::constant(p.varcount(), 1);
  Poly base = p;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly derive(const Poly& p, std::size_t var) {
  if (var >= p.varcount()) throw DomainError("derive: variable index out of range");
  TermVec out;
  for (const auto& [m, c] : p.terms()) {
    const unsigned e = m.exponent(var);
    if (e == 0) continue;
    auto [rest, removed] = m.split_off(var);
    out.emplace_back(rest * Monomial::variable(var, e - 1), c * e);
  }
  // Lowering one exponent can reorder terms.
  return Poly::from_terms(p.varcount(), std::move(out));
}

namespace {

// Lazily computed powers of substitution images.
class PowerCache {
 public:
  explicit PowerCache(std::span<const Poly> images) : images_(images), powers_(images.size()) {}

  const Poly& get(std::size_t var, unsigned e) {
    auto& row = powers_[var];
    if (row.empty()) row.push_back(Poly::constant(images_[var].varcount(), 1));
    while (row.size() <= e) row.push_back(row.back() * images_[var]);
    return row[e];
  }

 private:
  std::span<const Poly> images_;
  std::vector<std::vector<Poly>> powers_;
};

}  // namespace

Poly substitute(const Poly& p, std::span<const Poly> images) {
  if (images.size() != p.varcount()) {
    throw DomainError("substitute: expected " + std::to_string(p.varcount()) + " images, got " +
                      std::to_string(images.size()));
  }
  const std::size_t target = images.empty() ? 0 : images[0].varcount();
  for (const auto& im : images) {
    if (im.varcount() != target) throw DomainError("substitute: images live in different rings");
  }
  if (p.is_zero()) return Poly(target);
  // A single variable with unit coefficient maps straight to its image.
  if (p.size() == 1 && p.terms()[0].second == 1 && p.terms()[0].first.degree() == 1) {
    return images[p.terms()[0].first.factors()[0].first];
  }
  PowerCache cache(images);
  TermAccumulator acc(target);
  for (const auto& [m, c] : p.terms()) {
    // Monomial images multiply without forming polynomials.
    bool monomial_images = true;
    for (const auto& [v, e] : m.factors()) {
      if (images[v].size() != 1) {
        monomial_images = false;
        break;
      }
    }
    if (monomial_images) {
      bool zero = false;
      Monomial mono;
      Rational coef = c;
      for (const auto& [v, e] : m.factors()) {
        if (images[v].is_zero()) {
          zero = true;
          break;
        }
        const auto& [im, ic] = images[v].terms()[0];
        for (unsigned k = 0; k < e; ++k) mono = mono * im;
        coef *= pow(ic, e);
      }
      if (!zero) acc.add(mono, coef);
      continue;
    }
    Poly prod = Poly::constant(target, c);
    for (const auto& [v, e] : m.factors()) prod = prod * cache.get(v, e);
    acc.add(prod);
  }
  return acc.finish();
}

Poly substitute_some(const Poly& p, std::span<const std::pair<std::size_t, Poly>> images) {
  bool touched = false;
  for (const auto& [v, im] : images) {
    if (v >= p.varcount()) throw DomainError("substitute_some: variable index out of range");
    if (im.varcount() != p.varcount()) throw DomainError("substitute_some: image ring mismatch");
    if (!touched && p.involves(v)) touched = true;
  }
  if (!touched) return p;
  std::vector<Poly> full;
  full.reserve(p.varcount());
  for (std::size_t v = 0; v < p.varcount(); ++v) full.push_back(Poly::variable(v, p.varcount()));
  for (const auto& [v, im] : images) full[v] = im;
  return substitute(p, full);
}

std::map<unsigned, Poly> homogeneous_components(const Poly& p) {
  std::map<unsigned, TermVec> buckets;
  for (const auto& t : p.terms()) buckets[t.first.degree()].push_back(t);
  std::map<unsigned, Poly> out;
  for (auto& [d, ts] : buckets) out.emplace(d, Poly::adopt_canonical(p.varcount(), std::move(ts)));
  return out;
}

Poly homogeneous_part(const Poly& p, unsigned degree) {
  TermVec ts;
  for (const auto& t : p.terms()) {
    if (t.first.degree() == degree) ts.push_back(t);
  }
  return Poly::adopt_canonical(p.varcount(), std::move(ts));
}

Rational eval(const Poly& p, std::span<const Rational> point) {
  if (point.size() != p.varcount()) {
    throw DomainError("eval: point has " + std::to_string(point.size()) + " coordinates, expected " +
                      std::to_string(p.varcount()));
  }
  std::vector<std::vector<Rational>> powers(point.size());
  Rational sum = 0;
  Rational term;
  for (const auto& [m, c] : p.terms()) {
    term = c;
    for (const auto& [v, e] : m.factors()) {
      auto& row = powers[v];
      if (row.empty()) row.push_back(1);
      while (row.size() <= e) row.push_back(row.back() * point[v]);
      term *= row[e];
    }
    sum += term;
  }
  return sum;
}

Poly exact_divide(const Poly& p, const Poly& q) {
  require_same_ring(p, q, "exact_divide");
  if (q.is_zero()) throw DomainError("exact_divide: division by the zero polynomial");
  if (q.is_constant()) return Rational(1 / q.terms()[0].second) * p;
  const auto& [lm, lc] = q.leading_term();
  TermVec quotient;
  Poly rest = p;
  while (!rest.is_zero()) {
    const auto& [rm, rc] = rest.leading_term();
    if (!lm.divides(rm)) throw NotDivisible("exact_divide: divisor does not divide the dividend");
    Monomial qm = lm.cofactor_in(rm);
    Rational qc = rc / lc;
    rest = rest - Poly::monomial(p.varcount(), qm, qc) * q;
    // Quotient terms are produced in descending order.
    quotient.emplace_back(std::move(qm), std::move(qc));
  }
  return Poly::adopt_canonical(p.varcount(), std::move(quotient));
}

std::vector<Poly> coefficients_in(const Poly& p, std::size_t var) {
  if (var >= p.varcount()) throw DomainError("coefficients_in: variable index out of range");
  std::vector<TermVec> buckets;
  for (const auto& [m, c] : p.terms()) {
    auto [rest, e] = m.split_off(var);
    if (buckets.size() <= e) buckets.resize(e + 1);
    buckets[e].emplace_back(std::move(rest), c);
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(p.varcount(), std::move(b)));
  return out;
}

Poly from_coefficients_in(std::span<const Poly> coefficients, std::size_t var) {
  if (coefficients.empty()) return Poly();
  const std::size_t n = coefficients[0].varcount();
  TermAccumulator acc(n);
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (coefficients[k].varcount() != n) throw DomainError("from_coefficients_in: ring mismatch");
    acc.add_product(coefficients[k], Monomial::variable(var, static_cast<unsigned>(k)), 1);
  }
  return acc.finish();
}

void TermAccumulator::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = index_.try_emplace(m, pending_.size());
  if (inserted) {
    pending_.emplace_back(m, c);
  } else {
    pending_[it->second].second += c;
  }
}

void TermAccumulator::add(const Poly& p, const Rational& scale) {
  if (p.varcount() != varcount_) throw DomainError("accumulator: ring mismatch");
  for (const auto& [m, c] : p.terms()) add(m, scale == 1 ? c : Rational(c * scale));
}

void TermAccumulator::add_product(const Poly& p, const Monomial& m, const Rational& c) {
  if (p.varcount() != varcount_) throw DomainError("accumulator: ring mismatch");
  if (m.support_end() > varcount_) throw DomainError("accumulator: monomial outside the ring");
  for (const auto& [pm, pc] : p.terms()) add(pm * m, pc * c);
}

Poly TermAccumulator::finish() {
  TermVec out;
  out.reserve(pending_.size());
  for (auto& t : pending_) {
    if (t.second != 0) out.push_back(std::move(t));
  }
  pending_.clear();
  index_.clear();
  sort_terms(out);
  for (const auto& t : out) {
    if (t.first.support_end() > varcount_) throw DomainError("monomial outside the ring");
  }
  return Poly::adopt_canonical(varcount_, std::move(out));
}

}  // namespace jacred
