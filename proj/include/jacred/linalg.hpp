#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jacred/rational.hpp"

namespace jacred {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major);
  static RatMatrix identity(std::size_t n);
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  RatMatrix transpose() const;
  bool is_zero() const;
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
  std::vector<Rational> apply(std::span<const Rational> v) const;

  /// Stacks rows of a on top of rows of b.
  static RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);
  static RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RatMatrix reduced;                 ///< reduced row echelon form, zero rows kept at the bottom
  std::vector<std::size_t> pivots;   ///< pivot column of each nonzero row
};

RowEchelon rref(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
Rational determinant(const RatMatrix& m);
/// Throws DomainError when m is singular or not square.
RatMatrix inverse(const RatMatrix& m);
/// Columns form a basis of {v : m v = 0}; n x k with k = cols - rank.
RatMatrix kernel_basis(const RatMatrix& m);

/// Sparse rational matrix as rows of (column, value) pairs sorted by column.
struct SparseRatMatrix {
  using Row = std::vector<std::pair<std::uint32_t, Rational>>;
  std::size_t n = 0;  ///< square dimension
  std::vector<Row> rows;

  static SparseRatMatrix from_dense(const RatMatrix& m);
  RatMatrix to_dense() const;
};

/// Exact determinant by sparse elimination with a sparsity-first pivot rule.
Rational sparse_determinant(SparseRatMatrix m);

/// Exact inverse by sparse Gauss-Jordan elimination; nullopt when singular.
std::optional<SparseRatMatrix> sparse_inverse(SparseRatMatrix m);

/// Arithmetic modulo a prime below 2^62.
struct PrimeField {
  std::uint64_t p;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  /// Image of a rational; nullopt when p divides the denominator.
  std::optional<std::uint64_t> reduce(const Rational& q) const;
};

/// Fixed primes used for modular witnesses (all just below 2^62).
std::span<const std::uint64_t> witness_primes();

/// Determinant modulo p; nullopt when some entry's denominator vanishes mod p.
std::optional<std::uint64_t> determinant_mod(const SparseRatMatrix& m, const PrimeField& field);

/// Computes M^k v (mod p) for k = 1..power and reports whether the last
/// vector is nonzero. nullopt when an entry is not reducible mod p.
std::optional<bool> power_apply_nonzero_mod(const SparseRatMatrix& m, std::span<const std::uint64_t> v,
                                            std::size_t power, const PrimeField& field);

}  // namespace jacred
