#include "jacred/reducer.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "jacred/error.hpp"
#include "jacred/random.hpp"

namespace jacred {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

void check(const Deadline* d, const char* stage) {
  if (d) d->check(stage);
}

unsigned degree_or_zero(const Poly& p) { return p.is_zero() ? 0 : p.degree().value(); }

// Every divisor of m of total degree d, in a deterministic order.
void divisors_of_degree(const Monomial& m, unsigned d, std::vector<Monomial>& out) {
  const auto factors = m.factors();
  std::vector<Monomial::Factor> chosen;
  auto rec = [&](auto&& self, std::size_t k, unsigned left) -> void {
    if (left == 0) {
      out.push_back(Monomial::from_factors(chosen));
      return;
    }
    if (k == factors.size()) return;
    unsigned rest = 0;
    for (std::size_t j = k + 1; j < factors.size(); ++j) rest += factors[j].second;
    const unsigned hi = std::min(left, factors[k].second);
    const unsigned lo = left > rest ? left - rest : 0;
    for (unsigned e = hi + 1; e-- > lo;) {
      if (e > 0) chosen.emplace_back(factors[k].first, e);
      self(self, k + 1, left - e);
      if (e > 0) chosen.pop_back();
    }
  };
  rec(rec, 0, d);
}

// Splitting ab of the top-degree part of `p` (degree d >= 4): a is a
// monomial of degree ceil(d/2) and b a form of degree floor(d/2).
std::pair<Poly, Poly> choose_split(const Poly& p, unsigned d, bool grouping) {
  const std::size_t n = p.varcount();
  const unsigned da = (d + 1) / 2;
  std::vector<Poly::Term> top;
  for (const auto& t : p.terms()) {
    if (t.first.degree() != d) break;
    top.push_back(t);
  }
  Monomial g;
  if (grouping) {
    std::map<Monomial, std::size_t, GrlexDescending> counts;
    std::vector<Monomial> divs;
    for (const auto& [m, c] : top) {
      divs.clear();
      divisors_of_degree(m, da, divs);
      for (const auto& q : divs) ++counts[q];
    }
    std::size_t best = 0;
    for (const auto& [q, k] : counts) {
      if (k > best) {
        best = k;
        g = q;
      }
    }
  } else {
    // balanced split of the leading exponent, variables in order
    std::vector<Monomial::Factor> fs;
    unsigned left = da;
    for (const auto& [v, e] : top.front().first.factors()) {
      if (left == 0) break;
      const unsigned take = std::min(left, e);
      fs.emplace_back(v, take);
      left -= take;
    }
    g = Monomial::from_factors(std::move(fs));
    top.resize(1);
  }
  std::vector<Poly::Term> bts;
  for (const auto& [m, c] : top) {
    if (g.divides(m)) bts.emplace_back(g.cofactor_in(m), c);
  }
  return {Poly::monomial(n, g), Poly::from_terms(n, std::move(bts))};
}

Automorphism linear_automorphism(const SparseRatMatrix& forward, const SparseRatMatrix& inverse,
                                 std::string label) {
  auto to_map = [](const SparseRatMatrix& m) {
    std::vector<std::pair<std::size_t, Poly>> ch;
    for (std::size_t r = 0; r < m.n; ++r) {
      const auto& row = m.rows[r];
      if (row.size() == 1 && row[0].first == r && row[0].second == 1) continue;
      std::vector<Poly::Term> ts;
      for (const auto& [c, v] : row) ts.emplace_back(Monomial::variable(c), v);
      ch.emplace_back(r, Poly::from_terms(m.n, std::move(ts)));
    }
    return RationalMap(m.n, std::move(ch));
  };
  return {to_map(forward), to_map(inverse), AutVerification::exact_identity, std::move(label)};
}

// Coordinate permutation x_k -> x_{perm[k]} as a map with its inverse.
Automorphism permutation_automorphism(const std::vector<std::size_t>& perm, std::string label) {
  const std::size_t n = perm.size();
  SparseRatMatrix f, g;
  f.n = g.n = n;
  f.rows.resize(n);
  g.rows.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    f.rows[k].emplace_back(static_cast<std::uint32_t>(perm[k]), Rational(1));
    g.rows[perm[k]].emplace_back(static_cast<std::uint32_t>(k), Rational(1));
  }
  return linear_automorphism(f, g, std::move(label));
}

// Splits a component into its x-degree-graded pieces multiplied by powers of
// t (the last variable): p = sum_k t^k p_k(x).
std::map<unsigned, Poly> t_graded(const Poly& p, std::size_t t) {
  std::map<unsigned, std::vector<Poly::Term>> parts;
  for (const auto& [m, c] : p.terms()) {
    auto [rest, e] = m.split_off(t);
    parts[e].emplace_back(std::move(rest), c);
  }
  std::map<unsigned, Poly> out;
  for (auto& [e, ts] : parts) out.emplace(e, Poly::from_terms(p.varcount(), std::move(ts)));
  return out;
}

bool is_normalized_cubic(const PolyMap& f, std::string* why) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Poly& c = f[i];
    if (degree_or_zero(c) > 3) {
      if (why) *why = "component " + std::to_string(i + 1) + " has degree above 3";
      return false;
    }
    if (!(homogeneous_part(c, 1) == Poly::variable(i, f.varcount())) || c.constant_term() != 0) {
      if (why) *why = "component " + std::to_string(i + 1) + " is not x_i plus higher-order terms";
      return false;
    }
  }
  return true;
}

}  // namespace

DegreePotential degree_potential(const PolyMap& f) {
  DegreePotential p{0, 0};
  for (const auto& c : f.components()) {
    const unsigned d = degree_or_zero(c);
    std::size_t count = 0;
    for (const auto& t : c.terms()) {
      if (t.first.degree() != d) break;
      ++count;
    }
    if (d > p.first) {
      p = {d, count};
    } else if (d == p.first) {
      p.second += count;
    }
  }
  return p;
}

LowerDegreeResult lower_degree(const PolyMap& f, const LowerDegreeOptions& options) {
  if (!f.is_square()) throw DomainError("lower_degree: map is not square");
  CertificateBuilder b(f);
  LowerDegreeResult r;
  for (;;) {
    const PolyMap& cur = b.current();
    const DegreePotential pot = degree_potential(cur);
    r.potentials.push_back(pot);
    if (pot.first <= 3) break;
    check(options.deadline, "degree lowering");
    if (cur.varcount() + 2 > options.max_dim) {
      throw BudgetExceeded("degree lowering needs more than " + std::to_string(options.max_dim) + " variables");
    }
    std::size_t i = 0;
    while (degree_or_zero(cur[i]) != pot.first) ++i;
    const std::size_t n = cur.varcount(), y = n, z = n + 1;
    auto [a, bb] = choose_split(cur[i], pot.first, options.grouping);
    Poly a2 = a.extended(n + 2), b2 = bb.extended(n + 2);
    Poly vy = Poly::variable(y, n + 2), vz = Poly::variable(z, n + 2);
    Poly prod = vy * vz;
    b.extend(2);
    // (x, y, z) -> (x, y + a, z + b)
    b.pre({RationalMap(n + 2, {{y, vy + a2}, {z, vz + b2}}), RationalMap(n + 2, {{y, vy - a2}, {z, vz - b2}}),
           AutVerification::exact_identity, "split"});
    // u_i -> u_i - u_y u_z
    Poly ui = Poly::variable(i, n + 2);
    b.post({RationalMap(n + 2, {{i, ui - prod}}), RationalMap(n + 2, {{i, ui + prod}}),
            AutVerification::exact_identity, "subtract-product"});
    ++r.splits;
  }
  r.certificate = b.finish();
  r.map = r.certificate.target;
  return r;
}

NormalizeResult normalize(const PolyMap& f, std::uint64_t seed, const Deadline* deadline) {
  if (!f.is_square()) throw DomainError("normalize: map is not square");
  if (f.degree() > Degree::of(3)) throw DomainError("normalize: map has degree above 3");
  const std::size_t n = f.varcount();
  NormalizeResult r;
  std::optional<SparseRatMatrix> jinv;
  SparseRatMatrix jac;
  constexpr std::size_t kAttempts = 64;
  for (std::size_t k = 0; k < kAttempts && !jinv; ++k) {
    check(deadline, "base point search");
    std::vector<Rational> x0 =
        k == 0 ? std::vector<Rational>(n, Rational(0))
               : random_integer_point(n, static_cast<std::int64_t>(1 + k / 4), Rng::derive(seed, k));
    ++r.attempts;
    jac = jacobian_at(f, x0);
    auto inv = sparse_inverse(jac);
    if (inv) {
      jinv = std::move(inv);
      r.base_point = std::move(x0);
    }
  }
  if (!jinv) throw DomainError("normalize: no point with nonzero Jacobian determinant found; the map looks degenerate");

  CertificateBuilder b(f);
  const auto& x0 = r.base_point;
  if (std::any_of(x0.begin(), x0.end(), [](const Rational& v) { return v != 0; })) {
    std::vector<Rational> minus(n);
    for (std::size_t i = 0; i < n; ++i) minus[i] = -x0[i];
    b.pre({RationalMap::translation(x0), RationalMap::translation(minus), AutVerification::exact_identity,
           "translate-source"});
  }
  const auto value = f.eval(x0);
  if (std::any_of(value.begin(), value.end(), [](const Rational& v) { return v != 0; })) {
    std::vector<Rational> minus(n);
    for (std::size_t i = 0; i < n; ++i) minus[i] = -value[i];
    b.post({RationalMap::translation(minus), RationalMap::translation(value), AutVerification::exact_identity,
            "translate-target"});
  }
  Automorphism lin = linear_automorphism(*jinv, jac, "inverse-linear-part");
  if (!lin.forward.changed().empty()) b.post(std::move(lin));
  r.certificate = b.finish();
  r.map = r.certificate.target;
  std::string why;
  if (!is_normalized_cubic(r.map, &why)) throw DomainError("normalize: internal check failed: " + why);
  return r;
}

SegreResult segre_step(const PolyMap& f, const Budget& budget) {
  std::string why;
  if (!f.is_square() || !is_normalized_cubic(f, &why)) {
    throw DomainError("segre_step: expected X + Q + C: " + (why.empty() ? std::string("map is not square") : why));
  }
  SegreResult r;
  CertificateBuilder b(f);
  b.segre();
  r.certificate = b.finish();
  r.map = r.certificate.target;
  const std::size_t n = f.varcount();
  if (n + 1 <= budget.exact_det_dim) {
    auto jf = jacobian_det(f, budget), jg = jacobian_det(r.map, budget);
    if (jf.value && jg.value) {
      std::vector<Poly> scaled;
      for (std::size_t i = 0; i < n; ++i) scaled.push_back(Poly::variable(i, n + 1) * Poly::variable(n, n + 1));
      r.determinant_identity = substitute(*jf.value, scaled) == *jg.value ? Tri::yes : Tri::no;
      if (r.determinant_identity == Tri::no) throw DomainError("segre_step: determinant identity failed");
    }
  }
  return r;
}

StageResult eliminate_quadratic(const PolyMap& f) {
  if (!f.is_square() || f.varcount() == 0) throw DomainError("eliminate_quadratic: map is not square");
  const std::size_t n = f.varcount() - 1, t = n, N = 2 * n + 1;
  if (!(f[t] == Poly::variable(t, n + 1))) throw DomainError("eliminate_quadratic: last component is not t");
  std::vector<Poly> cubic(n, Poly(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [e, part] : t_graded(f[i] - Poly::variable(i, n + 1), t)) {
      if (part.is_zero()) continue;
      const bool ok = (e == 1 && part.is_homogeneous() && degree_or_zero(part) == 2) ||
                      (e == 2 && part.is_homogeneous() && degree_or_zero(part) == 3);
      if (!ok) {
        throw DomainError("eliminate_quadratic: component " + std::to_string(i + 1) +
                          " is not x + tQ + t^2 C with Q, C free of t");
      }
      if (e == 2) cubic[i] = part;
    }
  }
  CertificateBuilder b(f);
  b.extend(n);
  // variable order (x, t, y) -> (x, y, t)
  std::vector<std::size_t> perm(N);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  perm[t] = N - 1;
  for (std::size_t j = 0; j < n; ++j) perm[n + 1 + j] = n + j;
  if (n > 0) {
    // old coordinate k is new coordinate perm[k]; components follow the variables
    Automorphism p = permutation_automorphism(perm, "reorder");
    b.post(p.inverted());
    b.pre(std::move(p));
  }
  const Poly tv = Poly::variable(N - 1, N);
  std::vector<std::size_t> embed(n + 1);
  for (std::size_t i = 0; i < n; ++i) embed[i] = i;
  embed[t] = N - 1;
  std::vector<std::pair<std::size_t, Poly>> a2f, a2i, a1f, a1i;
  for (std::size_t i = 0; i < n; ++i) {
    const Poly yi = Poly::variable(n + i, N), xi = Poly::variable(i, N);
    const Poly c = cubic[i].renumbered(embed, N);
    if (!c.is_zero()) {
      a2f.emplace_back(n + i, yi + c);
      a2i.emplace_back(n + i, yi - c);
    }
    a1f.emplace_back(i, xi - tv * tv * yi);
    a1i.emplace_back(i, xi + tv * tv * yi);
  }
  if (!a2f.empty()) {
    b.pre({RationalMap(N, std::move(a2f)), RationalMap(N, std::move(a2i)), AutVerification::exact_identity, "A2"});
  }
  if (n > 0) {
    b.post({RationalMap(N, std::move(a1f)), RationalMap(N, std::move(a1i)), AutVerification::exact_identity, "A1"});
  }
  StageResult r;
  r.certificate = b.finish();
  r.map = r.certificate.target;
  return r;
}

namespace {

void record(ReductionTrace& trace, const char* name, const PolyMap& before, const StageResult& s,
            Clock::time_point start) {
  trace.stages.push_back({name, before.varcount(), s.map.varcount(), s.certificate.moves.size(), ms_since(start)});
}

}  // namespace

Reduction to_cubic(const PolyMap& f, const ReduceOptions& options) {
  const auto start = Clock::now();
  Deadline deadline(options.budget.max_ms);
  Reduction out;
  out.trace.budget = options.budget;
  out.trace.grouping = options.grouping;
  auto s1 = lower_degree(f, {options.grouping, options.budget.max_dim, &deadline});
  record(out.trace, "Step1", f, s1, start);
  out.trace.potentials = s1.potentials;
  out.trace.certificate = std::move(s1.certificate);
  out.map = std::move(s1.map);
  out.trace.elapsed_ms = ms_since(start);
  return out;
}

Reduction to_yagzhev(const PolyMap& f, std::uint64_t seed, const ReduceOptions& options) {
  const auto start = Clock::now();
  Deadline deadline(options.budget.max_ms);
  Reduction out;
  ReductionTrace& tr = out.trace;
  tr.budget = options.budget;
  tr.grouping = options.grouping;

  auto t = Clock::now();
  auto s1 = lower_degree(f, {options.grouping, options.budget.max_dim, &deadline});
  record(tr, "Step1", f, s1, t);
  tr.potentials = s1.potentials;
  CertificateBuilder b(f);
  b.append(s1.certificate);

  t = Clock::now();
  auto s2 = normalize(s1.map, seed, &deadline);
  record(tr, "Step2", s1.map, s2, t);
  tr.base_point = s2.base_point;
  tr.base_point_attempts = s2.attempts;
  b.append(s2.certificate);
  deadline.check("normalization");

  const std::size_t final_dim = 2 * s2.map.varcount() + 1;
  if (final_dim > options.budget.max_dim) {
    throw BudgetExceeded("quadratic elimination would reach dimension " + std::to_string(final_dim) +
                         ", above the cap of " + std::to_string(options.budget.max_dim));
  }
  t = Clock::now();
  auto s3 = segre_step(s2.map, options.budget);
  record(tr, "Step3", s2.map, s3, t);
  tr.segre_identity = s3.determinant_identity;
  b.append(s3.certificate);
  deadline.check("Segre extension");

  t = Clock::now();
  auto s4 = eliminate_quadratic(s3.map);
  record(tr, "Step4", s3.map, s4, t);
  b.append(s4.certificate);

  tr.certificate = b.finish();
  out.map = tr.certificate.target;
  if (!is_yagzhev(out.map).ok) throw DomainError("to_yagzhev: output is not of cubic homogeneous type");
  tr.elapsed_ms = ms_since(start);
  return out;
}

MengResult meng_symmetrize(const PolyMap& f, std::uint64_t seed, const Budget& budget) {
  if (!f.is_square()) throw DomainError("meng_symmetrize: map is not square");
  const std::size_t n = f.varcount(), N = 2 * n;
  // ring (a, b): a = first n variables, b = last n
  std::vector<std::size_t> embed_a(n);
  for (std::size_t i = 0; i < n; ++i) embed_a[i] = i;
  PolyMatrix jac = jacobian(f);
  auto jdet = jacobian_det(f, budget);
  if (!jdet.value) throw BudgetExceeded("meng_symmetrize: exact Jacobian determinant is over budget: " + jdet.reason);
  const Poly j = jdet.value->renumbered(embed_a, N);
  if (j.is_zero()) throw DomainError("meng_symmetrize: map is degenerate");

  // S(a, b) = (a, J(F)(a)^T b); S^-1(a, b) = (a, adj(J)(a)^T b / j(a))
  auto entry = [&](std::size_t r, std::size_t c) { return jac(r, c).renumbered(embed_a, N); };
  std::vector<std::pair<std::size_t, Poly>> sf, si;
  for (std::size_t k = 0; k < n; ++k) {
    Poly s(N);
    for (std::size_t i = 0; i < n; ++i) s = s + entry(i, k) * Poly::variable(n + i, N);
    sf.emplace_back(n + k, s);
  }
  // (J^T)^-1 = adj(J^T) / j with adj(J^T)_{k i} = cofactor of J at (k, i)
  for (std::size_t k = 0; k < n; ++k) {
    Poly s(N);
    for (std::size_t i = 0; i < n; ++i) {
      PolyMatrix minor(n - 1, n - 1, n);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == k) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = jac(r, c);
        }
        ++rr;
      }
      Poly cof = n == 1 ? Poly::constant(n, 1) : *determinant(minor, SIZE_MAX).value;
      if ((k + i) % 2 == 1) cof = Rational(-1) * cof;
      s = s + cof.renumbered(embed_a, N) * Poly::variable(n + i, N);
    }
    si.emplace_back(n + k, s);
  }
  NowhereZero status = NowhereZero::proven_constant;
  if (!j.is_constant()) {
    auto sampled = sample_nonsingular(f, jdet.value, seed, 200);
    status = sampled.pass ? NowhereZero::sampled : NowhereZero::assumed;
  }
  Automorphism shear{RationalMap(N, sf), RationalMap(N, si, j, status),
                     j.is_constant() ? AutVerification::exact_identity : AutVerification::fraction_field_identity,
                     "transpose-jacobian-shear"};
  std::vector<std::size_t> swap(N);
  for (std::size_t i = 0; i < n; ++i) {
    swap[i] = n + i;
    swap[n + i] = i;
  }
  CertificateBuilder b(f);
  b.extend(n);
  b.pre(std::move(shear));
  if (n > 0) b.pre(permutation_automorphism(swap, "swap"));

  MengResult r;
  r.certificate = b.finish();
  r.map = r.certificate.target;
  r.status = status;
  std::vector<std::size_t> embed_v(n);
  for (std::size_t i = 0; i < n; ++i) embed_v[i] = n + i;
  Poly h(N);
  for (std::size_t i = 0; i < n; ++i) h = h + Poly::variable(i, N) * f[i].renumbered(embed_v, N);
  r.potential = h;
  for (std::size_t k = 0; k < N; ++k) {
    if (!(derive(h, k) == r.map[k])) throw DomainError("meng_symmetrize: internal check G = grad h failed");
  }
  return r;
}

}  // namespace jacred
