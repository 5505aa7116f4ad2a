#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jacred/certlab.hpp"

namespace jacred {

/// Output map of a reduction stage together with the certificate source -> map.
struct StageResult {
  PolyMap map;
  Certificate certificate;
};

/// Step 1 potential: (global max degree, number of terms of that degree).
using DegreePotential = std::pair<unsigned, std::size_t>;
DegreePotential degree_potential(const PolyMap& f);

struct LowerDegreeOptions {
  /// Split off a monomial shared by several top-degree terms instead of a
  /// single term.
  bool grouping = true;
  std::size_t max_dim = 2000;
  const Deadline* deadline = nullptr;
};

struct LowerDegreeResult : StageResult {
  /// Potential before every splitting and after the last one.
  std::vector<DegreePotential> potentials;
  std::size_t splits = 0;
};

/// Replaces top-degree terms ab by fresh coordinates y + a, z + b until every
/// component has degree at most 3. Throws BudgetExceeded past max_dim.
LowerDegreeResult lower_degree(const PolyMap& f, const LowerDegreeOptions& options = {});

struct NormalizeResult : StageResult {
  std::vector<Rational> base_point;
  std::size_t attempts = 0;  ///< base points tried, the accepted one included
};

/// Moves a point x0 with j(F)(x0) != 0 (origin first, then seeded integer
/// points in an expanding box) to the origin and makes J(F)(0) the identity.
NormalizeResult normalize(const PolyMap& f, std::uint64_t seed, const Deadline* deadline = nullptr);

struct SegreResult : StageResult {
  /// Exact check of j(G)(x, t) = j(F)(t x); unknown when over the budget.
  Tri determinant_identity = Tri::unknown;
};

/// F = X + Q + C (quadratic and cubic homogeneous parts) to (X + tQ + t^2 C, t).
SegreResult segre_step(const PolyMap& f, const Budget& budget = {});

/// (X + tQ + t^2 C, t) to (X - t^2 Y + tQ, Y + C, t) in dimension 2n + 1.
StageResult eliminate_quadratic(const PolyMap& f);

struct StageRecord {
  std::string name;
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  std::size_t moves = 0;
  std::int64_t ms = 0;
};

struct ReductionTrace {
  Certificate certificate;
  std::vector<StageRecord> stages;
  std::vector<DegreePotential> potentials;
  std::vector<Rational> base_point;
  std::size_t base_point_attempts = 0;
  Tri segre_identity = Tri::unknown;
  std::int64_t elapsed_ms = 0;
  Budget budget;
  bool grouping = true;
};

struct Reduction {
  PolyMap map;
  ReductionTrace trace;
};

struct ReduceOptions {
  Budget budget;
  bool grouping = true;
};

/// Step 1 only: a stably equivalent map of degree at most 3.
Reduction to_cubic(const PolyMap& f, const ReduceOptions& options = {});

/// Steps 1 to 4: a stably equivalent Yagzhev map.
Reduction to_yagzhev(const PolyMap& f, std::uint64_t seed, const ReduceOptions& options = {});

struct MengResult {
  PolyMap map;  ///< G(x, v) = (F(v), J(F)(v)^T x), variables x first
  Certificate certificate;
  Poly potential;  ///< h = x . F(v), G = grad h
  NowhereZero status = NowhereZero::proven_constant;
};

/// Symmetrization by the gradient of x . F(v). The shear (a, b) -> (a, J(F)(a)^T b)
/// has a polynomial inverse exactly when F is Keller.
MengResult meng_symmetrize(const PolyMap& f, std::uint64_t seed = 1, const Budget& budget = {});

}  // namespace jacred
