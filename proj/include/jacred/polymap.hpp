#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jacred/linalg.hpp"
#include "jacred/poly.hpp"

namespace jacred {

/// Exactness and resource limits. All of them are configuration.
struct Budget {
  std::size_t max_dim = 2000;            ///< reducer dimension cap
  std::int64_t max_ms = 300000;          ///< wall clock for a whole command
  std::size_t exact_det_dim = 12;        ///< exact symbolic determinant up to this size
  std::size_t exact_term_ops = 100000;   ///< ... or while elimination stays below this many term products
  std::size_t exact_nilpotent_dim = 24;  ///< exact M^n = 0 test up to this size
};

/// Wall-clock deadline derived from a Budget.
class Deadline {
 public:
  explicit Deadline(std::int64_t ms)
      : end_(std::chrono::steady_clock::now() + std::chrono::milliseconds(ms)) {}
  bool expired() const { return std::chrono::steady_clock::now() > end_; }
  /// Throws BudgetExceeded naming `stage` when expired.
  void check(const char* stage) const;

 private:
  std::chrono::steady_clock::time_point end_;
};

enum class Tri { no, yes, unknown };
const char* to_string(Tri t);

/// Polynomial map x -> (f_1(x), ..., f_m(x)) with all f_i in `varcount` variables.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::size_t varcount, std::vector<Poly> components);
  static PolyMap identity(std::size_t n);

  std::size_t varcount() const { return varcount_; }
  std::size_t size() const { return comps_.size(); }
  bool is_square() const { return comps_.size() == varcount_; }
  const Poly& operator[](std::size_t k) const { return comps_[k]; }
  std::span<const Poly> components() const { return comps_; }
  Degree degree() const;

  std::vector<Rational> eval(std::span<const Rational> point) const;
  /// (this o inner)(x) = this(inner(x)).
  PolyMap compose(const PolyMap& inner) const;
  /// Appends n - varcount fresh variables and identity components for them.
  PolyMap extended(std::size_t n) const;

  friend bool operator==(const PolyMap&, const PolyMap&) = default;

 private:
  std::size_t varcount_ = 0;
  std::vector<Poly> comps_;
};

/// Dense matrix of polynomials sharing one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t varcount);
  static PolyMatrix identity(std::size_t n, std::size_t varcount);
  static PolyMatrix constant(const RatMatrix& m, std::size_t varcount);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t varcount() const { return varcount_; }
  Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  PolyMatrix transpose() const;
  /// Entry-wise substitution of a map into every entry.
  PolyMatrix substitute(std::span<const Poly> images) const;
  RatMatrix eval(std::span<const Rational> point) const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t varcount_ = 0;
  std::vector<Poly> entries_;
};

PolyMatrix jacobian(const PolyMap& f);

/// J(F) evaluated at a point, as a sparse matrix (no symbolic Jacobian kept).
SparseRatMatrix jacobian_at(const PolyMap& f, std::span<const Rational> point);

/// J(F - X) at a point.
SparseRatMatrix nonlinear_jacobian_at(const PolyMap& f, std::span<const Rational> point);

/// Result of a budgeted exact computation.
template <class T>
struct Budgeted {
  std::optional<T> value;
  std::string reason;  ///< why value is absent
};

/// Fraction-free (Bareiss) determinant with sparsest-pivot selection. Returns
/// no value once more than `term_ops` term products have been spent.
Budgeted<Poly> determinant(const PolyMatrix& m, std::size_t term_ops);

/// Exact j(F) when within budget (dimension or term-operation limit).
Budgeted<Poly> jacobian_det(const PolyMap& f, const Budget& budget = {});

/// Evaluates a polynomial at many rational points over the integers:
/// coefficients are scaled to integers and each coordinate a/d contributes
/// a^e d^(D-e), so only the sign-preserving positive factor prod d^D is lost.
class IntegerEvaluator {
 public:
  explicit IntegerEvaluator(const Poly& p);
  /// Sign of p at the point.
  int sign_at(std::span<const Rational> point) const;
  /// p at the point, exactly.
  Rational value_at(std::span<const Rational> point) const;

 private:
  Integer scaled_value(std::span<const Rational> point) const;
  Poly p_;
  Integer scale_;  ///< p = poly_int / scale_
  std::vector<unsigned> max_exp_;
  std::vector<std::pair<std::vector<std::pair<std::uint32_t, std::uint32_t>>, Integer>> terms_;
};

struct SampledCheck {
  bool pass = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<std::vector<Rational>> zero_at;  ///< a point where j vanished
  int sign = 0;          ///< common sign of all sampled values (0 if mixed or zero)
  bool one_sign = true;  ///< all sampled values share a sign
};

struct Classification {
  bool nondegenerate = false;
  std::string nondegenerate_method;  ///< "exact" or "sampled"
  Tri keller = Tri::unknown;
  SampledCheck nonsingular_sampled;
  unsigned jacobian_degree_bound = 0;
  /// Upper bound on the chance that a randomized "degenerate" verdict is wrong.
  double schwartz_zippel_bound = 0;
  std::optional<Poly> jacobian_det;
};

/// Nondegeneracy, Keller property and sampled nonsingularity. Sample points
/// are rationals derived from the seed.
Classification classify(const PolyMap& f, std::uint64_t seed, std::size_t samples = 1000,
                        const Budget& budget = {});

/// j(F) != 0 at the sample points; uses the exact determinant when given.
SampledCheck sample_nonsingular(const PolyMap& f, const std::optional<Poly>& det, std::uint64_t seed,
                                std::size_t samples);

/// J(F)(0) for a square map.
RatMatrix linear_part(const PolyMap& f);

struct ShapeCheck {
  bool ok = false;
  std::string witness;  ///< description of the first violation
  std::optional<std::size_t> component;
};

/// F = X + H with every nonzero H-component cubic homogeneous.
ShapeCheck is_yagzhev(const PolyMap& f);

/// H-component equal to scale * form^3.
struct CubeForm {
  Poly form;
  Rational scale;
};

struct DruzkowskiCheck {
  ShapeCheck shape;
  /// One entry per component; nullopt where the H-component is zero.
  std::vector<std::optional<CubeForm>> forms;
};

/// Recognizes c * l^3 for a rational linear form l.
std::optional<CubeForm> as_cube(const Poly& h);

DruzkowskiCheck is_druzkowski(const PolyMap& f);

/// The nonlinear part H = F - X.
PolyMap nonlinear_part(const PolyMap& f);

struct NilpotencyCheck {
  Tri nilpotent = Tri::unknown;
  bool exact = false;
  std::string witness;
  std::optional<std::vector<Rational>> witness_point;
};

/// Exact M^n == 0 for n <= budget.exact_nilpotent_dim; otherwise numeric
/// specializations at seeded points (a nonzero M(p)^n v mod p proves "no").
NilpotencyCheck is_nilpotent(const PolyMatrix& m, const Budget& budget = {}, std::uint64_t seed = 1,
                             std::size_t trials = 3);

/// Numeric-only test on J(F - X) without forming the symbolic matrix.
NilpotencyCheck nonlinear_jacobian_nilpotent_sampled(const PolyMap& f, std::uint64_t seed, std::size_t trials = 3);

/// Two points where j(F) differs, found with modular determinants.
struct NonconstancyWitness {
  std::vector<Rational> p;
  std::vector<Rational> q;
  std::uint64_t prime = 0;
  std::uint64_t det_p_mod = 0;
  std::uint64_t det_q_mod = 0;
};
std::optional<NonconstancyWitness> jacobian_nonconstant_witness(const PolyMap& f, std::uint64_t seed,
                                                                std::size_t trials = 8);

/// Integer sample point with coordinates in [-radius, radius].
std::vector<Rational> random_integer_point(std::size_t n, std::int64_t radius, std::uint64_t seed);
std::vector<Rational> random_rational_point(std::size_t n, std::uint64_t seed);

}  // namespace jacred
