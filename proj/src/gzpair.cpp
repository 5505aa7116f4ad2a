#include "jacred/gzpair.hpp"

#include <map>

#include "jacred/error.hpp"

namespace jacred {

namespace {

// Linear form sum_j v_j x_j in n variables.
Poly linear_form(std::span<const Rational> v) {
  std::vector<Poly::Term> ts;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) ts.emplace_back(Monomial::variable(j), v[j]);
  }
  return Poly::from_terms(v.size(), std::move(ts));
}

std::vector<Rational> form_coefficients(const Poly& l) {
  std::vector<Rational> v(l.varcount());
  for (const auto& [m, c] : l.terms()) v[m.factors()[0].first] = c;
  return v;
}

// Adds c * (sum w_k x_{v_k})^3 to the pool, scaling the form to a leading 1.
void add_cube(std::map<std::vector<Rational>, Rational>& pool, std::vector<Rational> form, Rational c) {
  Rational lead = 0;
  for (const auto& x : form) {
    if (x != 0) {
      lead = x;
      break;
    }
  }
  for (auto& x : form) x /= lead;
  pool[form] += c * lead * lead * lead;
}

RatMatrix identity_stack(std::size_t n, std::size_t m) {
  RatMatrix c(n, m);
  for (std::size_t i = 0; i < m; ++i) c(i, i) = 1;
  return c;
}

// B F(C x) as a map in m variables.
PolyMap sandwich(const RatMatrix& b, const PolyMap& f, const RatMatrix& c) {
  const std::size_t n = c.rows(), m = c.cols();
  std::vector<Poly> cx;
  for (std::size_t i = 0; i < n; ++i) cx.push_back(linear_form(c.row(i)));
  std::vector<Poly> fc;
  for (const auto& comp : f.components()) fc.push_back(substitute(comp, cx));
  std::vector<Poly> out;
  for (std::size_t i = 0; i < b.rows(); ++i) {
    TermAccumulator acc(m);
    for (std::size_t j = 0; j < n; ++j) {
      if (b(i, j) != 0) acc.add(fc[j], b(i, j));
    }
    out.push_back(acc.finish());
  }
  return PolyMap(m, std::move(out));
}

}  // namespace

std::vector<CubeTerm> decompose_cubes(const Poly& h) {
  if (h.is_zero()) return {};
  if (!h.is_homogeneous() || h.degree() != Degree::of(3)) {
    throw DomainError("decompose_cubes: expected a cubic form");
  }
  const std::size_t n = h.varcount();
  std::map<std::vector<Rational>, Rational> pool;
  auto unit = [&](std::initializer_list<std::pair<std::size_t, int>> parts) {
    std::vector<Rational> v(n);
    for (const auto& [k, w] : parts) v[k] += w;
    return v;
  };
  for (const auto& [m, c] : h.terms()) {
    const auto f = m.factors();
    if (f.size() == 1) {
      add_cube(pool, unit({{f[0].first, 1}}), c);
    } else if (f.size() == 2) {
      // x^2 y = (2x+y)^3/6 - (x+y)^3/3 - x^3 + y^3/6
      const std::size_t x = f[0].second == 2 ? f[0].first : f[1].first;
      const std::size_t y = f[0].second == 2 ? f[1].first : f[0].first;
      add_cube(pool, unit({{x, 2}, {y, 1}}), c / 6);
      add_cube(pool, unit({{x, 1}, {y, 1}}), -c / 3);
      add_cube(pool, unit({{x, 1}}), -c);
      add_cube(pool, unit({{y, 1}}), c / 6);
    } else {
      // 6xyz = (x+y+z)^3 - (x+y)^3 - (y+z)^3 - (x+z)^3 + x^3 + y^3 + z^3
      const std::size_t x = f[0].first, y = f[1].first, z = f[2].first;
      const Rational s = c / 6;
      add_cube(pool, unit({{x, 1}, {y, 1}, {z, 1}}), s);
      add_cube(pool, unit({{x, 1}, {y, 1}}), -s);
      add_cube(pool, unit({{y, 1}, {z, 1}}), -s);
      add_cube(pool, unit({{x, 1}, {z, 1}}), -s);
      add_cube(pool, unit({{x, 1}}), s);
      add_cube(pool, unit({{y, 1}}), s);
      add_cube(pool, unit({{z, 1}}), s);
    }
  }
  std::vector<CubeTerm> out;
  for (const auto& [form, c] : pool) {
    if (c != 0) out.push_back({c, linear_form(form)});
  }
  return out;
}

PolyMap cubic_linear_map(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DomainError("cubic_linear_map: matrix is not square");
  const std::size_t n = a.rows();
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(Poly::variable(i, n) + pow(linear_form(a.row(i)), 3));
  return PolyMap(n, std::move(comps));
}

GZPairing pair_down(const PolyMap& f, const RatMatrix& a) {
  if (!f.is_square() || a.rows() != f.varcount() || a.cols() != f.varcount()) {
    throw DomainError("pair_down: matrix and map sizes differ");
  }
  if (!(cubic_linear_map(a) == f)) throw DomainError("pair_down: F is not X + (AX)^{*3} for the given A");
  const std::size_t n = a.rows();
  auto e = rref(a);
  const std::size_t m = e.pivots.size();
  if (m == 0) throw DomainError("pair_down: A has rank 0, so there is no nonempty partner");
  GZPairing p;
  p.A = a;
  p.F = f;
  p.B = RatMatrix(m, n);
  p.C = RatMatrix(n, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p.B(i, j) = e.reduced(i, j);
    p.C(e.pivots[i], i) = 1;
  }
  p.G = sandwich(p.B, f, p.C);
  return p;
}

GZPairing pair_up(const PolyMap& g) {
  auto shape = is_yagzhev(g);
  if (!g.is_square() || !shape.ok) throw DomainError("pair_up: expected a cubic homogeneous map: " + shape.witness);
  const std::size_t m = g.varcount();
  // shared pool of forms; coefficient of form k in component i
  std::map<std::vector<Rational>, std::size_t> index;
  std::vector<std::vector<Rational>> forms;
  std::vector<std::map<std::size_t, Rational>> coef(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& t : decompose_cubes(g[i] - Poly::variable(i, m))) {
      auto v = form_coefficients(t.form);
      auto [it, fresh] = index.emplace(v, forms.size());
      if (fresh) forms.push_back(v);
      coef[i][it->second] += t.coefficient;
    }
  }
  // pad with standard basis forms until the forms span the dual space
  auto stacked = [&] {
    RatMatrix q(forms.size(), m);
    for (std::size_t k = 0; k < forms.size(); ++k) {
      for (std::size_t j = 0; j < m; ++j) q(k, j) = forms[k][j];
    }
    return q;
  };
  std::size_t rk = forms.empty() ? 0 : rank(stacked());
  for (std::size_t j = 0; j < m && rk < m; ++j) {
    std::vector<Rational> e(m);
    e[j] = 1;
    if (index.contains(e)) continue;
    forms.push_back(e);
    const std::size_t next = rank(stacked());
    if (next > rk) {
      index.emplace(e, forms.size() - 1);
      rk = next;
    } else {
      forms.pop_back();
    }
  }
  const std::size_t r = forms.size(), n = m + r;
  RatMatrix q = stacked(), pm(m, r);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [k, c] : coef[i]) pm(i, k) = c;
  }
  RatMatrix qp = q * pm;
  GZPairing p;
  p.r = r;
  p.A = RatMatrix(n, n);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < m; ++j) p.A(m + k, j) = q(k, j);
    for (std::size_t j = 0; j < r; ++j) p.A(m + k, m + j) = qp(k, j);
  }
  p.B = RatMatrix::hstack(RatMatrix::identity(m), pm);
  p.C = identity_stack(n, m);
  p.F = cubic_linear_map(p.A);
  p.G = g;
  auto v = verify_pairing(p);
  if (!v.valid) throw DomainError("pair_up: internal check failed: " + v.reason);
  return p;
}

PairingVerdict verify_pairing(const GZPairing& p) {
  PairingVerdict v;
  const std::size_t n = p.A.rows(), m = p.B.rows();
  auto fail = [&](int axiom, std::string why) {
    v.failed_axiom = axiom;
    v.reason = std::move(why);
    return v;
  };
  if (p.A.cols() != n || p.B.cols() != n || p.C.rows() != n || p.C.cols() != m || p.F.varcount() != n ||
      !p.F.is_square() || p.G.varcount() != m || !p.G.is_square()) {
    return fail(1, "matrix and map sizes are inconsistent");
  }
  if (!(p.B * p.C == RatMatrix::identity(m))) return fail(1, "BC != I");
  const std::size_t ra = rank(p.A), rb = rank(p.B), rs = rank(RatMatrix::vstack(p.A, p.B));
  if (rb != m || ra != rb || rs != ra) {
    return fail(2, "ker B != ker A (ranks A " + std::to_string(ra) + ", B " + std::to_string(rb) + ", stacked " +
                       std::to_string(rs) + ")");
  }
  if (!(cubic_linear_map(p.A) == p.F)) return fail(4, "F is not X + (AX)^{*3}");
  if (!(sandwich(p.B, p.F, p.C) == p.G)) return fail(3, "G(x) != B F(Cx)");
  v.valid = true;
  return v;
}

Certificate pairing_to_equivalence(const GZPairing& p) {
  auto v = verify_pairing(p);
  if (!v.valid) throw DomainError("pairing_to_equivalence: invalid pairing: " + v.reason);
  const std::size_t n = p.A.rows(), m = p.B.rows(), k = n - m;
  const RatMatrix d = kernel_basis(p.B);
  const RatMatrix cp = RatMatrix::hstack(p.C, d);
  const RatMatrix bp = inverse(cp);
  // H'(x) = E'(ACx)^{*3} with E' the last n - m rows of B'
  const RatMatrix ac = p.A * p.C;
  std::vector<Poly> cubes;
  for (std::size_t i = 0; i < n; ++i) cubes.push_back(pow(linear_form(ac.row(i)), 3).extended(n));
  std::vector<std::pair<std::size_t, Poly>> fwd, inv;
  for (std::size_t i = 0; i < k; ++i) {
    TermAccumulator acc(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (bp(m + i, j) != 0) acc.add(cubes[j], bp(m + i, j));
    }
    Poly h = acc.finish();
    if (h.is_zero()) continue;
    const Poly z = Poly::variable(m + i, n);
    fwd.emplace_back(m + i, z + h);
    inv.emplace_back(m + i, z - h);
  }
  CertificateBuilder b(p.G);
  if (k > 0) b.extend(k);
  if (!fwd.empty()) {
    b.pre({RationalMap(n, std::move(fwd)), RationalMap(n, std::move(inv)), AutVerification::exact_identity, "shear"});
  }
  b.post({RationalMap::linear(cp), RationalMap::linear(bp), AutVerification::exact_identity, "C'"});
  b.pre({RationalMap::linear(bp), RationalMap::linear(cp), AutVerification::exact_identity, "B'"});
  Certificate c = b.finish();
  if (!(c.target == p.F)) throw DomainError("pairing_to_equivalence: internal check failed");
  return c;
}

}  // namespace jacred
