#include "jacred/certlab.hpp"

#include <algorithm>

#include "jacred/error.hpp"
#include "jacred/random.hpp"

namespace jacred {

const char* to_string(NowhereZero s) {
  switch (s) {
    case NowhereZero::proven_constant: return "proven-constant";
    case NowhereZero::sampled: return "sampled";
    default: return "assumed";
  }
}

NowhereZero nowhere_zero_from_string(std::string_view s) {
  if (s == "proven-constant") return NowhereZero::proven_constant;
  if (s == "sampled") return NowhereZero::sampled;
  if (s == "assumed") return NowhereZero::assumed;
  throw DomainError("unknown nowhere-zero status '" + std::string(s) + "'");
}

const char* to_string(AutVerification v) {
  return v == AutVerification::exact_identity ? "exact-identity" : "fraction-field-identity";
}

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::extend: return "extend";
    case MoveKind::post_compose: return "post-compose";
    case MoveKind::pre_compose: return "pre-compose";
    default: return "segre";
  }
}

RationalMap::RationalMap(std::size_t dim, std::vector<std::pair<std::size_t, Poly>> changed)
    : RationalMap(dim, std::move(changed), Poly::constant(dim, 1), NowhereZero::proven_constant) {}

RationalMap::RationalMap(std::size_t dim, std::vector<std::pair<std::size_t, Poly>> changed, Poly denominator,
                         NowhereZero status)
    : dim_(dim), changed_(std::move(changed)), den_(std::move(denominator)), status_(status) {
  normalize();
}

void RationalMap::normalize() {
  if (den_.varcount() != dim_) throw DomainError("RationalMap: denominator ring mismatch");
  if (den_.is_zero()) throw DomainError("RationalMap: zero denominator");
  std::sort(changed_.begin(), changed_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 0; k < changed_.size(); ++k) {
    if (changed_[k].first >= dim_) throw DomainError("RationalMap: component index out of range");
    if (k > 0 && changed_[k].first == changed_[k - 1].first) throw DomainError("RationalMap: duplicate component");
    if (changed_[k].second.varcount() != dim_) throw DomainError("RationalMap: numerator ring mismatch");
  }
  if (den_.is_constant()) {
    const Rational c = den_.constant_term();
    if (c != 1) {
      for (auto& [i, p] : changed_) p = Rational(1 / c) * p;
      den_ = Poly::constant(dim_, 1);
    }
    status_ = NowhereZero::proven_constant;
  }
  std::erase_if(changed_, [&](const auto& e) { return e.second == Poly::variable(e.first, dim_) * den_; });
}

RationalMap RationalMap::from_polymap(const PolyMap& f) {
  if (!f.is_square()) throw DomainError("RationalMap: map is not square");
  std::vector<std::pair<std::size_t, Poly>> ch;
  for (std::size_t i = 0; i < f.size(); ++i) ch.emplace_back(i, f[i]);
  return RationalMap(f.varcount(), std::move(ch));
}

RationalMap RationalMap::linear(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("RationalMap::linear: matrix is not square");
  const std::size_t n = m.rows();
  std::vector<std::pair<std::size_t, Poly>> ch;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Poly::Term> ts;
    for (std::size_t c = 0; c < n; ++c) {
      if (m(r, c) != 0) ts.emplace_back(Monomial::variable(c), m(r, c));
    }
    ch.emplace_back(r, Poly::from_terms(n, std::move(ts)));
  }
  return RationalMap(n, std::move(ch));
}

RationalMap RationalMap::translation(std::span<const Rational> v) {
  const std::size_t n = v.size();
  std::vector<std::pair<std::size_t, Poly>> ch;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] != 0) ch.emplace_back(i, Poly::variable(i, n) + Poly::constant(n, v[i]));
  }
  return RationalMap(n, std::move(ch));
}

Poly RationalMap::numerator(std::size_t i) const {
  if (i >= dim_) throw DomainError("RationalMap: component index out of range");
  auto it = std::lower_bound(changed_.begin(), changed_.end(), i,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != changed_.end() && it->first == i) return it->second;
  return Poly::variable(i, dim_) * den_;
}

Poly RationalMap::component(std::size_t i) const {
  if (!is_polynomial()) throw DomainError("RationalMap: component of a rational map is not a polynomial");
  return numerator(i);
}

PolyMap RationalMap::to_polymap() const {
  std::vector<Poly> comps;
  comps.reserve(dim_);
  for (std::size_t i = 0; i < dim_; ++i) comps.push_back(component(i));
  return PolyMap(dim_, std::move(comps));
}

bool RationalMap::is_linear() const {
  if (!is_polynomial()) return false;
  return std::all_of(changed_.begin(), changed_.end(), [](const auto& e) {
    return e.second.is_zero() || (e.second.is_homogeneous() && e.second.degree().value() == 1);
  });
}

std::optional<std::vector<Rational>> RationalMap::eval(std::span<const Rational> point) const {
  if (point.size() != dim_) throw DomainError("RationalMap::eval: point has the wrong length");
  std::vector<Rational> out(point.begin(), point.end());
  if (changed_.empty()) return out;
  const Rational d = jacred::eval(den_, point);
  if (d == 0) return std::nullopt;
  for (const auto& [i, p] : changed_) out[i] = jacred::eval(p, point) / d;
  return out;
}

namespace {

// p(m) = N / e^w with w the largest total exponent of a changed coordinate
// in a term of p; unchanged coordinates stay polynomial.
struct WeightedImage {
  Poly numerator;
  unsigned weight = 0;
};

WeightedImage weighted_substitute(const Poly& p, const RationalMap& m) {
  const std::size_t n = p.varcount();
  std::vector<bool> changed(n, false);
  for (const auto& [i, q] : m.changed()) changed[i] = true;
  auto weight = [&](const Monomial& mono) {
    unsigned w = 0;
    for (const auto& [v, e] : mono.factors()) {
      if (changed[v]) w += e;
    }
    return w;
  };
  WeightedImage out;
  for (const auto& [mono, c] : p.terms()) out.weight = std::max(out.weight, weight(mono));
  std::vector<Poly::Term> ts;
  ts.reserve(p.size());
  for (const auto& [mono, c] : p.terms()) ts.emplace_back(mono * Monomial::variable(n, out.weight - weight(mono)), c);
  Poly ph = Poly::from_terms(n + 1, std::move(ts));
  std::vector<Poly> images;
  images.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) images.push_back(Poly::variable(i, n));
  for (const auto& [i, q] : m.changed()) images[i] = q;
  images.push_back(m.denominator());
  out.numerator = substitute(ph, images);
  return out;
}

std::vector<std::pair<std::size_t, Poly>> changed_images(const RationalMap& m) {
  return {m.changed().begin(), m.changed().end()};
}

}  // namespace

Poly substitute_rational(const Poly& p, const RationalMap& m) {
  if (p.varcount() != m.dim()) throw DomainError("substitute_rational: ring mismatch");
  if (m.is_polynomial()) {
    const auto ch = changed_images(m);
    return substitute_some(p, ch);
  }
  bool touched = false;
  for (const auto& [i, q] : m.changed()) touched = touched || p.involves(i);
  if (!touched) return p;
  auto img = weighted_substitute(p, m);
  try {
    return exact_divide(img.numerator, pow(m.denominator(), img.weight));
  } catch (const NotDivisible&) {
    throw DomainError("composition with a rational map does not yield a polynomial");
  }
}

bool composes_to_identity(const RationalMap& outer, const RationalMap& inner, std::string* why) {
  if (outer.dim() != inner.dim()) {
    if (why) *why = "dimension mismatch";
    return false;
  }
  const std::size_t n = outer.dim();
  std::vector<bool> outer_changed(n, false);
  for (const auto& [i, p] : outer.changed()) outer_changed[i] = true;
  for (const auto& [i, p] : inner.changed()) {
    if (!outer_changed[i]) {
      if (why) *why = "component " + std::to_string(i + 1) + " is moved by the inner map only";
      return false;
    }
  }
  const bool inner_poly = inner.is_polynomial();
  const auto inner_changed = changed_images(inner);
  const Poly& e = inner.denominator();
  // outer_i(inner) = N_i(inner) / d(inner) must equal x_i.
  WeightedImage d_sub;
  if (inner_poly) {
    d_sub.numerator = substitute_some(outer.denominator(), inner_changed);
  } else {
    d_sub = weighted_substitute(outer.denominator(), inner);
  }
  for (const auto& [i, num] : outer.changed()) {
    const Poly xi = Poly::variable(i, n);
    bool ok;
    if (inner_poly) {
      ok = substitute_some(num, inner_changed) == xi * d_sub.numerator;
    } else {
      // N(G / e) = A / e^a, d(G / e) = B / e^b: A e^b == x_i B e^a
      auto a = weighted_substitute(num, inner);
      ok = a.numerator * pow(e, d_sub.weight) == xi * d_sub.numerator * pow(e, a.weight);
    }
    if (!ok) {
      if (why) *why = "component " + std::to_string(i + 1) + " does not return to the coordinate";
      return false;
    }
  }
  return true;
}

NowhereZero Automorphism::status() const { return std::min(forward.status(), inverse.status()); }

Automorphism Automorphism::inverted() const { return {inverse, forward, verification, label}; }

std::string verify_automorphism(const Automorphism& a) {
  if (a.forward.dim() != a.inverse.dim()) return "forward and inverse have different dimensions";
  const bool polynomial = a.forward.is_polynomial() && a.inverse.is_polynomial();
  if (polynomial != (a.verification == AutVerification::exact_identity)) {
    return std::string("verification kind ") + to_string(a.verification) + " does not match the maps";
  }
  std::string why;
  if (!composes_to_identity(a.forward, a.inverse, &why)) return "forward o inverse != id: " + why;
  if (!composes_to_identity(a.inverse, a.forward, &why)) return "inverse o forward != id: " + why;
  return {};
}

Move Move::extend(std::size_t before, std::size_t count) {
  Move m;
  m.kind = MoveKind::extend;
  m.count = count;
  m.before_dim = before;
  m.after_dim = before + count;
  return m;
}

Move Move::post(Automorphism a) {
  Move m;
  m.kind = MoveKind::post_compose;
  m.before_dim = m.after_dim = a.dim();
  m.automorphism = std::make_shared<const Automorphism>(std::move(a));
  return m;
}

Move Move::pre(Automorphism a) {
  Move m = post(std::move(a));
  m.kind = MoveKind::pre_compose;
  return m;
}

Move Move::segre(std::size_t before) {
  Move m;
  m.kind = MoveKind::segre;
  m.before_dim = before;
  m.after_dim = before + 1;
  return m;
}

PolyMap segre_extend(const PolyMap& f) {
  if (!f.is_square()) throw DomainError("segre: map is not square");
  const std::size_t n = f.varcount();
  std::vector<Poly> comps;
  comps.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].constant_term() != 0) {
      throw DomainError("segre: the map does not fix the origin");
    }
    // F_i(t x) / t: each term c x^m becomes c t^(|m| - 1) x^m.
    std::vector<Poly::Term> ts;
    ts.reserve(f[i].size());
    for (const auto& [m, c] : f[i].terms()) ts.emplace_back(m * Monomial::variable(n, m.degree() - 1), c);
    comps.push_back(Poly::from_terms(n + 1, std::move(ts)));
  }
  comps.push_back(Poly::variable(n, n + 1));
  return PolyMap(n + 1, std::move(comps));
}

PolyMap apply_move(const PolyMap& f, const Move& m) {
  if (!f.is_square()) throw DomainError("apply_move: map is not square");
  if (m.before_dim != f.varcount()) {
    throw DomainError("apply_move: move expects dimension " + std::to_string(m.before_dim) + ", map has " +
                      std::to_string(f.varcount()));
  }
  switch (m.kind) {
    case MoveKind::extend:
      if (m.after_dim != m.before_dim + m.count) throw DomainError("apply_move: inconsistent extend dimensions");
      return f.extended(m.after_dim);
    case MoveKind::segre:
      if (m.after_dim != m.before_dim + 1) throw DomainError("apply_move: inconsistent segre dimensions");
      return segre_extend(f);
    case MoveKind::post_compose: {
      if (!m.automorphism || m.automorphism->dim() != f.size() || m.after_dim != m.before_dim) {
        throw DomainError("apply_move: post-composition dimension mismatch");
      }
      const RationalMap& a = m.automorphism->forward;
      std::vector<Poly> comps(f.components().begin(), f.components().end());
      if (a.changed().empty()) return f;
      if (a.is_polynomial()) {
        for (const auto& [i, p] : a.changed()) comps[i] = substitute(p, f.components());
      } else {
        const Poly d = substitute(a.denominator(), f.components());
        for (const auto& [i, p] : a.changed()) {
          try {
            comps[i] = exact_divide(substitute(p, f.components()), d);
          } catch (const NotDivisible&) {
            throw DomainError("apply_move: post-composition yields a non-polynomial component");
          }
        }
      }
      return PolyMap(f.varcount(), std::move(comps));
    }
    case MoveKind::pre_compose: {
      if (!m.automorphism || m.automorphism->dim() != f.varcount() || m.after_dim != m.before_dim) {
        throw DomainError("apply_move: pre-composition dimension mismatch");
      }
      std::vector<Poly> comps;
      comps.reserve(f.size());
      for (const auto& c : f.components()) comps.push_back(substitute_rational(c, m.automorphism->forward));
      return PolyMap(f.varcount(), std::move(comps));
    }
  }
  throw DomainError("apply_move: unknown move kind");
}

CertificateBuilder::CertificateBuilder(PolyMap source) : current_(source) {
  cert_.source = std::move(source);
  cert_.target = cert_.source;
}

CertificateBuilder& CertificateBuilder::push(Move m) {
  current_ = apply_move(current_, m);
  cert_.moves.push_back(std::move(m));
  cert_.intermediates.push_back(current_);
  cert_.target = current_;
  return *this;
}

CertificateBuilder& CertificateBuilder::extend(std::size_t count) {
  return push(Move::extend(current_.varcount(), count));
}

CertificateBuilder& CertificateBuilder::post(Automorphism a) { return push(Move::post(std::move(a))); }

CertificateBuilder& CertificateBuilder::pre(Automorphism a) { return push(Move::pre(std::move(a))); }

CertificateBuilder& CertificateBuilder::segre() { return push(Move::segre(current_.varcount())); }

CertificateBuilder& CertificateBuilder::append(const Certificate& c) {
  if (!(c.source == current_)) throw DomainError("append: certificate does not start at the current map");
  for (std::size_t k = 0; k < c.moves.size(); ++k) {
    cert_.moves.push_back(c.moves[k]);
    cert_.intermediates.push_back(c.intermediates[k]);
  }
  current_ = c.target;
  cert_.target = current_;
  return *this;
}

Certificate CertificateBuilder::finish() const { return cert_; }

CertificateVerdict verify_certificate(const Certificate& c) {
  CertificateVerdict v;
  if (c.intermediates.size() != c.moves.size()) {
    v.reason = "certificate records " + std::to_string(c.intermediates.size()) + " intermediate maps for " +
               std::to_string(c.moves.size()) + " moves";
    return v;
  }
  const PolyMap* current = &c.source;
  for (std::size_t k = 0; k < c.moves.size(); ++k) {
    const Move& m = c.moves[k];
    v.failing_move = k;
    if (m.automorphism) {
      const std::string err = verify_automorphism(*m.automorphism);
      if (!err.empty()) {
        v.reason = "automorphism: " + err;
        return v;
      }
      v.weakest = std::min(v.weakest, m.automorphism->status());
    }
    PolyMap next;
    try {
      next = apply_move(*current, m);
    } catch (const Error& e) {
      v.reason = e.what();
      return v;
    }
    if (!(next == c.intermediates[k])) {
      v.reason = "replayed map differs from the recorded intermediate";
      return v;
    }
    current = &c.intermediates[k];
    ++v.moves_checked;
  }
  v.failing_move.reset();
  if (!(*current == c.target)) {
    v.reason = "final map differs from the recorded target";
    return v;
  }
  v.valid = true;
  return v;
}

FiberTransportReport fiber_transport_check(const Certificate& c, std::uint64_t seed, std::size_t samples) {
  FiberTransportReport r;
  r.requested = samples;
  r.seed = seed;
  std::uint64_t stream = 0;
  const std::size_t max_draws = samples * 4 + 16;
  while (r.checked < samples && stream < max_draws) {
    Rng rng(Rng::derive(seed, stream++));
    std::vector<Rational> x(c.source.varcount());
    for (auto& xi : x) xi = rng.rational(9, 5);
    std::vector<Rational> y = c.source.eval(x);
    bool dropped = false;
    for (const Move& m : c.moves) {
      switch (m.kind) {
        case MoveKind::extend:
          for (std::size_t k = 0; k < m.count; ++k) {
            const Rational z = rng.rational(9, 5);
            x.push_back(z);
            y.push_back(z);
          }
          break;
        case MoveKind::post_compose: {
          auto im = m.automorphism->forward.eval(y);
          if (!im) {
            dropped = true;
            break;
          }
          y = std::move(*im);
          break;
        }
        case MoveKind::pre_compose: {
          auto im = m.automorphism->inverse.eval(x);
          if (!im) {
            dropped = true;
            break;
          }
          x = std::move(*im);
          break;
        }
        case MoveKind::segre: {
          Rational t = 0;
          while (t == 0) t = rng.rational(9, 5);
          for (auto& xi : x) xi /= t;
          for (auto& yi : y) yi /= t;
          x.push_back(t);
          y.push_back(t);
          break;
        }
      }
      if (dropped) break;
    }
    if (dropped) {
      ++r.resampled;
      continue;
    }
    ++r.checked;
    if (c.target.eval(x) == y) {
      ++r.matches;
    } else {
      ++r.mismatches;
      if (!r.first_mismatch) r.first_mismatch = r.checked - 1;
    }
  }
  return r;
}

}  // namespace jacred
