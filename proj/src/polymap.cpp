#include "jacred/polymap.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "jacred/error.hpp"
#include "jacred/random.hpp"

namespace jacred {

void Deadline::check(const char* stage) const {
  if (expired()) throw BudgetExceeded(std::string("time budget exhausted during ") + stage);
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    default: return "unknown";
  }
}

PolyMap::PolyMap(std::size_t varcount, std::vector<Poly> components)
    : varcount_(varcount), comps_(std::move(components)) {
  for (const auto& c : comps_) {
    if (c.varcount() != varcount_) throw DomainError("PolyMap: component ring does not match the map");
  }
}

PolyMap PolyMap::identity(std::size_t n) {
  std::vector<Poly> comps;
  comps.reserve(n);
  for (std::size_t k = 0; k < n; ++k) comps.push_back(Poly::variable(k, n));
  return PolyMap(n, std::move(comps));
}

Degree PolyMap::degree() const {
  Degree d = Degree::minus_infinity();
  for (const auto& c : comps_) d = std::max(d, c.degree());
  return d;
}

std::vector<Rational> PolyMap::eval(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(jacred::eval(c, point));
  return out;
}

PolyMap PolyMap::compose(const PolyMap& inner) const {
  if (inner.size() != varcount_) throw DomainError("compose: inner map has the wrong number of components");
  std::vector<Poly> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(substitute(c, inner.components()));
  return PolyMap(inner.varcount(), std::move(out));
}

PolyMap PolyMap::extended(std::size_t n) const {
  if (n < varcount_) throw DomainError("extended: cannot remove variables");
  std::vector<Poly> out;
  out.reserve(comps_.size() + n - varcount_);
  for (const auto& c : comps_) out.push_back(c.extended(n));
  for (std::size_t k = varcount_; k < n; ++k) out.push_back(Poly::variable(k, n));
  return PolyMap(n, std::move(out));
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::size_t varcount)
    : rows_(rows), cols_(cols), varcount_(varcount), entries_(rows * cols, Poly(varcount)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, std::size_t varcount) {
  PolyMatrix m(n, n, varcount);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Poly::constant(varcount, 1);
  return m;
}

PolyMatrix PolyMatrix::constant(const RatMatrix& c, std::size_t varcount) {
  PolyMatrix m(c.rows(), c.cols(), varcount);
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t k = 0; k < c.cols(); ++k) m(r, k) = Poly::constant(varcount, c(r, k));
  }
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(cols_, rows_, varcount_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

PolyMatrix PolyMatrix::substitute(std::span<const Poly> images) const {
  const std::size_t target = images.empty() ? 0 : images[0].varcount();
  PolyMatrix out(rows_, cols_, target);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = jacred::substitute(entries_[k], images);
  return out;
}

RatMatrix PolyMatrix::eval(std::span<const Rational> point) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = jacred::eval((*this)(r, c), point);
  }
  return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("PolyMatrix product: shape mismatch");
  PolyMatrix out(a.rows_, b.cols_, a.varcount_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      TermAccumulator acc(a.varcount_);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Poly& x = a(i, k);
        const Poly& y = b(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        acc.add(x * y);
      }
      out(i, j) = acc.finish();
    }
  }
  return out;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("PolyMatrix difference: shape mismatch");
  PolyMatrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] = a.entries_[k] - b.entries_[k];
  return out;
}

PolyMatrix jacobian(const PolyMap& f) {
  PolyMatrix j(f.size(), f.varcount(), f.varcount());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t k = 0; k < f.varcount(); ++k) {
      if (f[i].involves(k)) j(i, k) = derive(f[i], k);
    }
  }
  return j;
}

namespace {

SparseRatMatrix jacobian_at_impl(const PolyMap& f, std::span<const Rational> point, bool subtract_identity) {
  if (!f.is_square()) throw DomainError("jacobian_at: map is not square");
  if (point.size() != f.varcount()) throw DomainError("jacobian_at: point has the wrong length");
  const std::size_t n = f.varcount();
  std::vector<std::vector<Rational>> powers(n);
  auto power = [&](std::size_t v, unsigned e) -> const Rational& {
    auto& row = powers[v];
    if (row.empty()) row.push_back(1);
    while (row.size() <= e) row.push_back(row.back() * point[v]);
    return row[e];
  };
  SparseRatMatrix out;
  out.n = n;
  out.rows.resize(n);
  std::map<std::uint32_t, Rational> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (const auto& [m, c] : f[i].terms()) {
      const auto fs = m.factors();
      for (std::size_t a = 0; a < fs.size(); ++a) {
        Rational val = c * fs[a].second;
        for (std::size_t b = 0; b < fs.size(); ++b) val *= power(fs[b].first, fs[b].second - (a == b ? 1 : 0));
        row[fs[a].first] += val;
      }
    }
    if (subtract_identity) row[static_cast<std::uint32_t>(i)] -= 1;
    for (auto& [col, v] : row) {
      if (v != 0) out.rows[i].emplace_back(col, v);
    }
  }
  return out;
}

}  // namespace

SparseRatMatrix jacobian_at(const PolyMap& f, std::span<const Rational> point) {
  return jacobian_at_impl(f, point, false);
}

SparseRatMatrix nonlinear_jacobian_at(const PolyMap& f, std::span<const Rational> point) {
  return jacobian_at_impl(f, point, true);
}

Budgeted<Poly> determinant(const PolyMatrix& input, std::size_t term_ops) {
  if (input.rows() != input.cols()) throw DomainError("determinant: matrix is not square");
  const std::size_t n = input.rows();
  const std::size_t vc = input.varcount();
  if (n == 0) return {Poly::constant(vc, 1), {}};
  PolyMatrix m = input;
  std::size_t spent = 0;
  int sign = 1;
  Poly prev = Poly::constant(vc, 1);
  for (std::size_t k = 0; k < n; ++k) {
    // Sparsest nonzero pivot in the trailing block; constants win.
    std::size_t pr = n, pc = n, best = 0;
    for (std::size_t r = k; r < n; ++r) {
      for (std::size_t c = k; c < n; ++c) {
        const Poly& e = m(r, c);
        if (e.is_zero()) continue;
        const std::size_t cost = e.is_constant() ? 0 : e.size();
        if (pr == n || cost < best) {
          pr = r;
          pc = c;
          best = cost;
        }
      }
    }
    if (pr == n) return {Poly(vc), {}};
    if (pr != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pr, c), m(k, c));
      sign = -sign;
    }
    if (pc != k) {
      for (std::size_t r = 0; r < n; ++r) std::swap(m(r, pc), m(r, k));
      sign = -sign;
    }
    const Poly pivot = m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Poly lead = m(i, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m(i, j) * pivot;
        spent += m(i, j).size() * pivot.size();
        if (!lead.is_zero() && !m(k, j).is_zero()) {
          num -= lead * m(k, j);
          spent += lead.size() * m(k, j).size();
        }
        m(i, j) = exact_divide(num, prev);
        spent += num.size() * prev.size();
        if (spent > term_ops) {
          return {std::nullopt, "determinant exceeded " + std::to_string(term_ops) + " term operations"};
        }
      }
      m(i, k) = Poly(vc);
    }
    prev = pivot;
  }
  Poly det = m(n - 1, n - 1);
  return {sign < 0 ? -det : det, {}};
}

Budgeted<Poly> jacobian_det(const PolyMap& f, const Budget& budget) {
  if (!f.is_square()) throw DomainError("jacobian_det: map is not square");
  const std::size_t n = f.varcount();
  const std::size_t limit = n <= budget.exact_det_dim ? SIZE_MAX : budget.exact_term_ops;
  return determinant(jacobian(f), limit);
}

IntegerEvaluator::IntegerEvaluator(const Poly& p) : p_(p), scale_(1), max_exp_(p.varcount(), 0) {
  for (const auto& [m, c] : p.terms()) mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), c.get_den().get_mpz_t());
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> fs(m.factors().begin(), m.factors().end());
    for (const auto& [v, e] : fs) max_exp_[v] = std::max<unsigned>(max_exp_[v], e);
    Integer ic = c.get_num() * (scale_ / c.get_den());
    terms_.emplace_back(std::move(fs), std::move(ic));
  }
}

Integer IntegerEvaluator::scaled_value(std::span<const Rational> point) const {
  if (point.size() != p_.varcount()) throw DomainError("IntegerEvaluator: point has the wrong length");
  const std::size_t n = point.size();
  std::vector<std::vector<Integer>> ap(n), dp(n);
  for (std::size_t v = 0; v < n; ++v) {
    ap[v].resize(max_exp_[v] + 1);
    dp[v].resize(max_exp_[v] + 1);
    ap[v][0] = 1;
    dp[v][0] = 1;
    for (unsigned e = 1; e <= max_exp_[v]; ++e) {
      ap[v][e] = ap[v][e - 1] * point[v].get_num();
      dp[v][e] = dp[v][e - 1] * point[v].get_den();
    }
  }
  Integer sum = 0, term;
  for (const auto& [fs, c] : terms_) {
    term = c;
    std::size_t k = 0;
    for (std::size_t v = 0; v < n; ++v) {
      unsigned e = 0;
      if (k < fs.size() && fs[k].first == v) e = fs[k++].second;
      if (e > 0) term *= ap[v][e];
      if (max_exp_[v] > e) term *= dp[v][max_exp_[v] - e];
    }
    sum += term;
  }
  return sum;
}

int IntegerEvaluator::sign_at(std::span<const Rational> point) const { return sgn(scaled_value(point)); }

Rational IntegerEvaluator::value_at(std::span<const Rational> point) const {
  Integer den = scale_;
  for (std::size_t v = 0; v < point.size(); ++v) {
    Integer d;
    mpz_pow_ui(d.get_mpz_t(), point[v].get_den().get_mpz_t(), max_exp_[v]);
    den *= d;
  }
  Rational out(scaled_value(point), den);
  out.canonicalize();
  return out;
}

std::vector<Rational> random_integer_point(std::size_t n, std::int64_t radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Rational> p(n);
  for (auto& x : p) x = static_cast<long>(rng.uniform(-radius, radius));
  return p;
}

std::vector<Rational> random_rational_point(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Rational> p(n);
  for (auto& x : p) x = rng.rational(1000, 97);
  return p;
}

namespace {

std::uint64_t det_mod_first_prime(const SparseRatMatrix& m, std::uint64_t* prime_used) {
  for (std::uint64_t p : witness_primes()) {
    auto d = determinant_mod(m, PrimeField{p});
    if (d) {
      if (prime_used) *prime_used = p;
      return *d;
    }
  }
  throw DomainError("no witness prime reduces the matrix");
}

unsigned jacobian_degree_bound(const PolyMap& f) {
  unsigned d = 0;
  for (const auto& c : f.components()) {
    if (!c.is_zero() && c.degree().value() > 0) d += c.degree().value() - 1;
  }
  return d;
}

}  // namespace

SampledCheck sample_nonsingular(const PolyMap& f, const std::optional<Poly>& det, std::uint64_t seed,
                                std::size_t samples) {
  SampledCheck out;
  out.seed = seed;
  std::optional<IntegerEvaluator> ev;
  if (det) ev.emplace(*det);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto point = random_rational_point(f.varcount(), Rng::derive(seed, k));
    int s;
    if (ev) {
      s = ev->sign_at(point);
    } else {
      // Only vanishing is decided modulo p; an exact fallback settles zeros.
      const auto jm = jacobian_at(f, point);
      bool nonzero = false;
      for (std::uint64_t p : witness_primes()) {
        auto d = determinant_mod(jm, PrimeField{p});
        if (d && *d != 0) {
          nonzero = true;
          break;
        }
      }
      s = nonzero ? 2 : sgn(sparse_determinant(jm));
    }
    ++out.samples;
    if (s == 0) {
      out.pass = false;
      out.one_sign = false;
      out.sign = 0;
      out.zero_at = point;
      break;
    }
    if (s == 2) {
      out.one_sign = false;
      continue;
    }
    if (out.samples == 1) {
      out.sign = s;
    } else if (s != out.sign) {
      out.one_sign = false;
    }
  }
  if (!out.one_sign) out.sign = 0;
  return out;
}

Classification classify(const PolyMap& f, std::uint64_t seed, std::size_t samples, const Budget& budget) {
  if (!f.is_square()) throw DomainError("classify: map is not square");
  Classification out;
  out.jacobian_degree_bound = jacobian_degree_bound(f);
  auto det = jacobian_det(f, budget);
  if (det.value) {
    out.jacobian_det = det.value;
    out.nondegenerate = !det.value->is_zero();
    out.nondegenerate_method = "exact";
    out.keller = (out.nondegenerate && det.value->is_constant()) ? Tri::yes : Tri::no;
  } else {
    // One nonzero evaluation proves j is not the zero polynomial.
    const std::int64_t radius = std::max<std::int64_t>(1, 10 * out.jacobian_degree_bound);
    const std::size_t trials = 20;
    std::optional<std::uint64_t> first;
    for (std::size_t k = 0; k < trials && !out.nondegenerate; ++k) {
      const auto point = random_integer_point(f.varcount(), radius, Rng::derive(seed ^ 0x5A5Aull, k));
      std::uint64_t d = det_mod_first_prime(jacobian_at(f, point), nullptr);
      if (d == 0) d = sparse_determinant(jacobian_at(f, point)) == 0 ? 0 : 1;
      if (d != 0) out.nondegenerate = true;
    }
    out.nondegenerate_method = "sampled";
    if (!out.nondegenerate) {
      out.schwartz_zippel_bound = 1.0;
      for (std::size_t k = 0; k < trials; ++k) out.schwartz_zippel_bound /= 10.0;
    }
    auto witness = jacobian_nonconstant_witness(f, seed);
    out.keller = witness ? Tri::no : (out.nondegenerate ? Tri::unknown : Tri::no);
  }
  out.nonsingular_sampled = sample_nonsingular(f, out.jacobian_det, seed, samples);
  return out;
}

RatMatrix linear_part(const PolyMap& f) {
  if (!f.is_square()) throw DomainError("linear_part: map is not square");
  const std::vector<Rational> zero(f.varcount());
  return jacobian_at(f, zero).to_dense();
}

PolyMap nonlinear_part(const PolyMap& f) {
  if (!f.is_square()) throw DomainError("nonlinear_part: map is not square");
  std::vector<Poly> h;
  h.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h.push_back(f[i] - Poly::variable(i, f.varcount()));
  return PolyMap(f.varcount(), std::move(h));
}

ShapeCheck is_yagzhev(const PolyMap& f) {
  if (!f.is_square()) throw DomainError("is_yagzhev: map is not square");
  const PolyMap h = nonlinear_part(f);
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (const auto& [m, c] : h[i].terms()) {
      if (m.degree() != 3) {
        return {false, "component " + std::to_string(i + 1) + " has a degree-" + std::to_string(m.degree()) +
                           " term in F - X", i};
      }
    }
  }
  return {true, {}, std::nullopt};
}

std::optional<CubeForm> as_cube(const Poly& h) {
  if (h.is_zero() || !h.is_homogeneous() || h.degree().value() != 3) return std::nullopt;
  const std::size_t n = h.varcount();
  for (std::size_t k = 0; k < n; ++k) {
    const Rational c = h.coefficient(Monomial::variable(k, 3));
    if (c == 0) continue;
    // l' = x_k + sum_j (coeff of x_k^2 x_j) / (3c) x_j
    std::vector<Poly::Term> terms{{Monomial::variable(k), Rational(1)}};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const Rational cj = h.coefficient(Monomial::variable(k, 2) * Monomial::variable(j));
      if (cj != 0) terms.emplace_back(Monomial::variable(j), cj / (3 * c));
    }
    Poly form = Poly::from_terms(n, std::move(terms));
    if (c * pow(form, 3) == h) return CubeForm{form, c};
    return std::nullopt;
  }
  return std::nullopt;
}

DruzkowskiCheck is_druzkowski(const PolyMap& f) {
  DruzkowskiCheck out;
  out.shape = is_yagzhev(f);
  if (!out.shape.ok) return out;
  const PolyMap h = nonlinear_part(f);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_zero()) {
      out.forms.emplace_back(std::nullopt);
      continue;
    }
    auto cube = as_cube(h[i]);
    if (!cube) {
      out.shape = {false, "component " + std::to_string(i + 1) + " of F - X is not a cube of a linear form", i};
      out.forms.clear();
      return out;
    }
    out.forms.emplace_back(std::move(cube));
  }
  return out;
}

namespace {

NilpotencyCheck sampled_nilpotency(std::size_t n, std::uint64_t seed, std::size_t trials,
                                   const std::function<SparseRatMatrix(std::span<const Rational>)>& at,
                                   std::size_t varcount) {
  NilpotencyCheck out;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto point = random_integer_point(varcount, 50, Rng::derive(seed, k));
    const SparseRatMatrix m = at(point);
    const PrimeField field{witness_primes()[0]};
    Rng rng(Rng::derive(seed, 1000 + k));
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = static_cast<std::uint64_t>(rng.uniform(1, 1000000));
    auto nonzero = power_apply_nonzero_mod(m, v, n, field);
    if (nonzero && *nonzero) {
      out.nilpotent = Tri::no;
      out.witness = "M(p)^" + std::to_string(n) + " v != 0 mod " + std::to_string(field.p);
      out.witness_point = point;
      return out;
    }
  }
  out.nilpotent = Tri::unknown;
  out.witness = "all " + std::to_string(trials) + " numeric specializations were nilpotent (leaning true)";
  return out;
}

}  // namespace

NilpotencyCheck is_nilpotent(const PolyMatrix& m, const Budget& budget, std::uint64_t seed, std::size_t trials) {
  if (m.rows() != m.cols()) throw DomainError("is_nilpotent: matrix is not square");
  const std::size_t n = m.rows();
  if (n <= budget.exact_nilpotent_dim) {
    NilpotencyCheck out;
    out.exact = true;
    PolyMatrix power = m;
    for (std::size_t k = 1; k <= n; ++k) {
      if (power.is_zero()) {
        out.nilpotent = Tri::yes;
        out.witness = "M^" + std::to_string(k) + " = 0";
        return out;
      }
      if (k < n) power = power * m;
    }
    out.nilpotent = Tri::no;
    out.witness = "M^" + std::to_string(n) + " != 0";
    // A numeric point where the power survives makes the refutation concrete.
    auto sampled = sampled_nilpotency(
        n, seed, trials,
        [&](std::span<const Rational> p) { return SparseRatMatrix::from_dense(m.eval(p)); }, m.varcount());
    if (sampled.witness_point) out.witness_point = sampled.witness_point;
    return out;
  }
  return sampled_nilpotency(
      n, seed, trials, [&](std::span<const Rational> p) { return SparseRatMatrix::from_dense(m.eval(p)); },
      m.varcount());
}

NilpotencyCheck nonlinear_jacobian_nilpotent_sampled(const PolyMap& f, std::uint64_t seed, std::size_t trials) {
  return sampled_nilpotency(
      f.size(), seed, trials, [&](std::span<const Rational> p) { return nonlinear_jacobian_at(f, p); },
      f.varcount());
}

std::optional<NonconstancyWitness> jacobian_nonconstant_witness(const PolyMap& f, std::uint64_t seed,
                                                                std::size_t trials) {
  const std::size_t n = f.varcount();
  for (std::size_t k = 0; k < trials; ++k) {
    NonconstancyWitness w;
    w.p = random_integer_point(n, 20, Rng::derive(seed, 2 * k));
    w.q = random_integer_point(n, 20, Rng::derive(seed, 2 * k + 1));
    std::uint64_t prime = 0;
    w.det_p_mod = det_mod_first_prime(jacobian_at(f, w.p), &prime);
    // Both residues must come from the same prime to compare.
    auto dq = determinant_mod(jacobian_at(f, w.q), PrimeField{prime});
    if (!dq) continue;
    w.det_q_mod = *dq;
    w.prime = prime;
    if (w.det_p_mod != w.det_q_mod) return w;
  }
  return std::nullopt;
}

}  // namespace jacred
