#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "jacred/poly.hpp"
#include "jacred/unipoly.hpp"

namespace jacred {

/// Resultant of p and q with respect to x_var, computed by the subresultant
/// polynomial remainder sequence over Q[remaining variables]. The result
/// lives in the same ring and does not involve x_var.
///
/// When one input does not involve x_var the result is the degenerate power
/// Res(p, c) = c^deg(p).
Poly resultant(const Poly& p, const Poly& q, std::size_t var);

/// Resultant of two univariate polynomials over Q (subresultant PRS).
Rational resultant(const UniPoly& p, const UniPoly& q);

/// p / gcd(p, p'), monic. Same distinct complex roots, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// Upper bound B with every complex root of p strictly inside |z| < B.
Rational cauchy_root_bound(const UniPoly& p);

/// Endpoint of a counting interval; nullopt stands for -inf / +inf.
using Endpoint = std::optional<Rational>;

/// Number of distinct real roots of p in (lo, hi]. The squarefree part is
/// taken internally. Throws DomainError for the zero polynomial or lo >= hi.
std::size_t sturm_count(const UniPoly& p, const Endpoint& lo = std::nullopt, const Endpoint& hi = std::nullopt);

/// Half-open rational interval (lo, hi] holding exactly one distinct real
/// root of the squarefree polynomial it was computed for.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  std::size_t sign_change_count = 1;
};

/// One interval per distinct real root, ascending and pairwise disjoint.
std::vector<IsolatingInterval> isolate_real_roots(const UniPoly& p);

/// Bisects an isolating interval of p until hi - lo <= width.
IsolatingInterval refine(const UniPoly& p, IsolatingInterval interval, const Rational& width);

/// Sturm sequence of the squarefree part of p (exposed for tests).
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

}  // namespace jacred
