#include "jacred/elimination.hpp"

#include <algorithm>

#include "jacred/error.hpp"

namespace jacred {

namespace {

// Coefficient arithmetic for the subresultant PRS. The chain needs exact
// division in the coefficient domain, which Q[y] and Q both provide.
struct PolyDomain {
  std::size_t varcount;
  Poly zero() const { return Poly(varcount); }
  Poly one() const { return Poly::constant(varcount, 1); }
  static bool is_zero(const Poly& c) { return c.is_zero(); }
  static Poly div(const Poly& a, const Poly& b) { return exact_divide(a, b); }
  static Poly power(const Poly& a, unsigned e) { return pow(a, e); }
};

struct RationalDomain {
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static bool is_zero(const Rational& c) { return c == 0; }
  static Rational div(const Rational& a, const Rational& b) { return a / b; }
  static Rational power(const Rational& a, unsigned e) { return pow(a, e); }
};

template <class C>
void trim(std::vector<C>& v, auto is_zero) {
  while (!v.empty() && is_zero(v.back())) v.pop_back();
}

// lc(B)^(deg A - deg B + 1) * A mod B, coefficients ascending.
template <class C, class D>
std::vector<C> pseudo_remainder(std::vector<C> r, const std::vector<C>& b, const D& dom) {
  const std::size_t db = b.size() - 1;
  const C& lcb = b.back();
  unsigned pending = static_cast<unsigned>(r.size() - db);
  while (!r.empty() && r.size() - 1 >= db) {
    const std::size_t dr = r.size() - 1;
    const C lcr = r.back();
    const std::size_t shift = dr - db;
    for (auto& c : r) c = c * lcb;
    for (std::size_t j = 0; j <= db; ++j) r[shift + j] = r[shift + j] - lcr * b[j];
    r.pop_back();
    trim(r, [&](const C& c) { return dom.is_zero(c); });
    --pending;
  }
  if (pending > 0 && !r.empty()) {
    const C scale = dom.power(lcb, pending);
    for (auto& c : r) c = c * scale;
  }
  return r;
}

// Resultant by the subresultant PRS (Collins/Brown), contents not removed.
template <class C, class D>
C subresultant_resultant(std::vector<C> a, std::vector<C> b, const D& dom) {
  auto zero = [&](const C& c) { return dom.is_zero(c); };
  trim(a, zero);
  trim(b, zero);
  if (a.empty() || b.empty()) return dom.zero();
  C sign = dom.one();
  if (a.size() < b.size()) {
    std::swap(a, b);
    if ((a.size() - 1) % 2 == 1 && (b.size() - 1) % 2 == 1) sign = dom.zero() - sign;
  }
  if (b.size() == 1) return sign * dom.power(b.back(), static_cast<unsigned>(a.size() - 1));
  C g = dom.one();
  C h = dom.one();
  while (true) {
    const std::size_t da = a.size() - 1;
    const std::size_t db = b.size() - 1;
    const unsigned delta = static_cast<unsigned>(da - db);
    if (da % 2 == 1 && db % 2 == 1) sign = dom.zero() - sign;
    std::vector<C> r = pseudo_remainder(a, b, dom);
    if (r.empty()) return dom.zero();
    const C divisor = g * dom.power(h, delta);
    for (auto& c : r) c = dom.div(c, divisor);
    a = std::move(b);
    b = std::move(r);
    g = a.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = dom.div(dom.power(g, delta), dom.power(h, delta - 1));
    }
    if (b.size() == 1) {
      const unsigned dA = static_cast<unsigned>(a.size() - 1);
      C last = dom.power(b.back(), dA);
      if (dA > 1) last = dom.div(last, dom.power(h, dA - 1));
      return sign * last;
    }
  }
}

}  // namespace

Poly resultant(const Poly& p, const Poly& q, std::size_t var) {
  if (p.varcount() != q.varcount()) throw DomainError("resultant: variable count mismatch");
  if (var >= p.varcount()) throw DomainError("resultant: variable index out of range");
  if (p.is_zero() && q.is_zero()) throw DomainError("resultant: both inputs are zero");
  if (p.is_zero() || q.is_zero()) return Poly(p.varcount());
  PolyDomain dom{p.varcount()};
  return subresultant_resultant(coefficients_in(p, var), coefficients_in(q, var), dom);
}

Rational resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero()) throw DomainError("resultant: both inputs are zero");
  auto pc = p.coefficients();
  auto qc = q.coefficients();
  return subresultant_resultant(std::vector<Rational>(pc.begin(), pc.end()),
                                std::vector<Rational>(qc.begin(), qc.end()), RationalDomain{});
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree_part: zero polynomial");
  if (p.degree().value() == 0) return UniPoly::constant(1);
  UniPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

Rational cauchy_root_bound(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("cauchy_root_bound: zero polynomial");
  const Rational& lc = p.leading_coefficient();
  Rational m = 0;
  auto cs = p.coefficients();
  for (std::size_t k = 0; k + 1 < cs.size(); ++k) m = std::max(m, Rational(abs(cs[k] / lc)));
  return m + 1;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  UniPoly p0 = squarefree_part(p);
  std::vector<UniPoly> seq{p0};
  UniPoly p1 = p0.derivative();
  while (!p1.is_zero()) {
    // Positive rescaling keeps every sign while taming coefficient growth.
    p1 = Rational(1 / abs(p1.leading_coefficient())) * p1;
    seq.push_back(p1);
    UniPoly r = divmod(seq[seq.size() - 2], p1).remainder;
    p1 = -r;
  }
  return seq;
}

namespace {

std::size_t sign_changes(const std::vector<UniPoly>& seq, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int sg = s.sign_at(x);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

std::size_t count_between(const std::vector<UniPoly>& seq, const Rational& lo, const Rational& hi) {
  const std::size_t a = sign_changes(seq, lo);
  const std::size_t b = sign_changes(seq, hi);
  return a >= b ? a - b : 0;
}

}  // namespace

std::size_t sturm_count(const UniPoly& p, const Endpoint& lo, const Endpoint& hi) {
  if (p.is_zero()) throw DomainError("sturm_count: zero polynomial");
  if (lo && hi && *lo >= *hi) throw DomainError("sturm_count: empty interval");
  if (p.degree().value() == 0) return 0;
  const auto seq = sturm_sequence(p);
  const Rational bound = cauchy_root_bound(seq.front());
  Rational a = lo ? *lo : Rational(-bound);
  Rational b = hi ? *hi : bound;
  if (a >= b) return 0;
  return count_between(seq, a, b);
}

std::vector<IsolatingInterval> isolate_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("isolate_real_roots: zero polynomial");
  std::vector<IsolatingInterval> out;
  if (p.degree().value() == 0) return out;
  const auto seq = sturm_sequence(p);
  const Rational bound = cauchy_root_bound(seq.front());
  // Depth-first over (lo, hi] so results come out ascending.
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    const std::size_t k = count_between(seq, lo, hi);
    if (k == 0) continue;
    if (k == 1) {
      out.push_back({lo, hi, 1});
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  return out;
}

IsolatingInterval refine(const UniPoly& p, IsolatingInterval interval, const Rational& width) {
  const UniPoly sf = squarefree_part(p);
  while (interval.hi - interval.lo > width) {
    Rational mid = (interval.lo + interval.hi) / 2;
    const int s_mid = sf.sign_at(mid);
    const int s_hi = sf.sign_at(interval.hi);
    // The root lies in (mid, hi] iff the sign changes there or hi is the root.
    if (s_hi == 0 || (s_mid != 0 && s_mid != s_hi)) {
      interval.lo = mid;
    } else {
      interval.hi = mid;
    }
  }
  return interval;
}

}  // namespace jacred
