#include "jacred/linalg.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "jacred/error.hpp"

namespace jacred {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw DomainError("RatMatrix: entry count does not match shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return {};
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DomainError("RatMatrix: ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool RatMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("RatMatrix product: shape mismatch");
  RatMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("RatMatrix sum: shape mismatch");
  RatMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("RatMatrix difference: shape mismatch");
  RatMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

std::vector<Rational> RatMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw DomainError("RatMatrix apply: length mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

RatMatrix RatMatrix::vstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.cols_) throw DomainError("vstack: column mismatch");
  RatMatrix out(a.rows_ + b.rows_, a.cols_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
  return out;
}

RatMatrix RatMatrix::hstack(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows_ != b.rows_) throw DomainError("hstack: row mismatch");
  RatMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

std::string RatMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

RowEchelon rref(const RatMatrix& m) {
  RowEchelon out{m, {}};
  RatMatrix& a = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
    }
    const Rational inv = 1 / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant: matrix is not square");
  return sparse_determinant(SparseRatMatrix::from_dense(m));
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse: matrix is not square");
  auto inv = sparse_inverse(SparseRatMatrix::from_dense(m));
  if (!inv) throw DomainError("inverse: matrix is singular");
  return inv->to_dense();
}

RatMatrix kernel_basis(const RatMatrix& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) free.push_back(c);
  }
  RatMatrix basis(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, free[k]);
  }
  return basis;
}

SparseRatMatrix SparseRatMatrix::from_dense(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("sparse matrix must be square");
  SparseRatMatrix s;
  s.n = m.rows();
  s.rows.resize(s.n);
  for (std::size_t r = 0; r < s.n; ++r) {
    for (std::size_t c = 0; c < s.n; ++c) {
      if (m(r, c) != 0) s.rows[r].emplace_back(static_cast<std::uint32_t>(c), m(r, c));
    }
  }
  return s;
}

RatMatrix SparseRatMatrix::to_dense() const {
  RatMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& [c, v] : rows[r]) m(r, c) = v;
  }
  return m;
}

namespace {

struct RationalOps {
  using Value = Rational;
  static bool is_zero(const Rational& v) { return v == 0; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational sub(const Rational& a, const Rational& b) { return a - b; }
  static Rational div(const Rational& a, const Rational& b) { return a / b; }
  static Rational one() { return 1; }
  static Rational neg(const Rational& a) { return -a; }
};

struct ModOps {
  using Value = std::uint64_t;
  PrimeField f;
  static bool is_zero(std::uint64_t v) { return v == 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return f.mul(a, b); }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return f.sub(a, b); }
  std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return f.mul(a, f.inv(b)); }
  static std::uint64_t one() { return 1; }
  std::uint64_t neg(std::uint64_t a) const { return f.sub(0, a); }
};

template <class V>
using SRow = std::vector<std::pair<std::uint32_t, V>>;

template <class V>
const V* find_in_row(const SRow<V>& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const std::pair<std::uint32_t, V>& e, std::uint32_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// target -= factor * source
template <class Ops>
void axpy(SRow<typename Ops::Value>& target, const typename Ops::Value& factor,
          const SRow<typename Ops::Value>& source, const Ops& ops) {
  using V = typename Ops::Value;
  SRow<V> out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      out.push_back(std::move(target[i++]));
    } else if (i == target.size() || source[j].first < target[i].first) {
      V v = ops.neg(ops.mul(factor, source[j].second));
      if (!ops.is_zero(v)) out.emplace_back(source[j].first, std::move(v));
      ++j;
    } else {
      V v = ops.sub(target[i].second, ops.mul(factor, source[j].second));
      if (!ops.is_zero(v)) out.emplace_back(target[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

int permutation_sign(const std::vector<std::size_t>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// Sparse elimination. With `augmented` non-null, runs Gauss-Jordan and
// applies every row operation to the augmented rows as well. Returns the
// determinant (zero when singular) and the pivot column of each row.
template <class Ops>
typename Ops::Value eliminate(std::vector<SRow<typename Ops::Value>>& rows,
                              std::vector<SRow<typename Ops::Value>>* augmented, std::vector<std::size_t>& pivot_col,
                              const Ops& ops) {
  using V = typename Ops::Value;
  const std::size_t n = rows.size();
  std::vector<bool> active(n, true);
  pivot_col.assign(n, 0);
  std::vector<std::size_t> col_count(n, 0);
  V det = ops.one();
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t r = 0; r < n; ++r) {
      if (!active[r]) continue;
      if (rows[r].empty()) return V{};  // singular
      if (best == n || rows[r].size() < rows[best].size()) best = r;
    }
    std::fill(col_count.begin(), col_count.end(), 0);
    for (std::size_t r = 0; r < n; ++r) {
      if (!active[r]) continue;
      for (const auto& e : rows[r]) ++col_count[e.first];
    }
    const auto& prow = rows[best];
    std::size_t pick = 0;
    for (std::size_t k = 1; k < prow.size(); ++k) {
      if (col_count[prow[k].first] < col_count[prow[pick].first]) pick = k;
    }
    const std::uint32_t col = prow[pick].first;
    const V pivot = prow[pick].second;
    active[best] = false;
    pivot_col[best] = col;
    det = ops.mul(det, pivot);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == best) continue;
      if (active[r] || augmented) {
        const V* entry = find_in_row(rows[r], col);
        if (!entry) continue;
        const V factor = ops.div(*entry, pivot);
        axpy(rows[r], factor, rows[best], ops);
        if (augmented) axpy((*augmented)[r], factor, (*augmented)[best], ops);
      }
    }
  }
  if (permutation_sign(pivot_col) < 0) det = ops.neg(det);
  return det;
}

}  // namespace

Rational sparse_determinant(SparseRatMatrix m) {
  std::vector<std::size_t> pivots;
  return eliminate(m.rows, nullptr, pivots, RationalOps{});
}

std::optional<SparseRatMatrix> sparse_inverse(SparseRatMatrix m) {
  std::vector<SRow<Rational>> aug(m.n);
  for (std::size_t r = 0; r < m.n; ++r) aug[r].emplace_back(static_cast<std::uint32_t>(r), Rational(1));
  std::vector<std::size_t> pivots;
  Rational det = eliminate(m.rows, &aug, pivots, RationalOps{});
  if (det == 0) return std::nullopt;
  SparseRatMatrix inv;
  inv.n = m.n;
  inv.rows.resize(m.n);
  for (std::size_t r = 0; r < m.n; ++r) {
    // Row r now reads pivot * x_{pivot_col} = aug_r.
    const Rational& pivot = m.rows[r].front().second;
    auto& out = inv.rows[pivots[r]];
    out = std::move(aug[r]);
    for (auto& e : out) e.second /= pivot;
  }
  return inv;
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1;
  a %= p;
  while (e > 0) {
    if (e & 1u) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> PrimeField::reduce(const Rational& q) const {
  const mpz_class pz(static_cast<unsigned long>(p));
  mpz_class num = q.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = q.get_den() % pz;
  if (den == 0) return std::nullopt;
  return mul(num.get_ui(), inv(den.get_ui()));
}

std::span<const std::uint64_t> witness_primes() {
  static const std::array<std::uint64_t, 4> primes{4611686018427387847ull, 4611686018427387817ull,
                                                   4611686018427387787ull, 4611686018427387733ull};
  return primes;
}

namespace {

std::optional<std::vector<SRow<std::uint64_t>>> reduce_rows(const SparseRatMatrix& m, const PrimeField& field) {
  std::vector<SRow<std::uint64_t>> rows(m.n);
  for (std::size_t r = 0; r < m.n; ++r) {
    for (const auto& [c, v] : m.rows[r]) {
      auto red = field.reduce(v);
      if (!red) return std::nullopt;
      if (*red != 0) rows[r].emplace_back(c, *red);
    }
  }
  return rows;
}

}  // namespace

std::optional<std::uint64_t> determinant_mod(const SparseRatMatrix& m, const PrimeField& field) {
  auto rows = reduce_rows(m, field);
  if (!rows) return std::nullopt;
  std::vector<std::size_t> pivots;
  return eliminate(*rows, nullptr, pivots, ModOps{field});
}

std::optional<bool> power_apply_nonzero_mod(const SparseRatMatrix& m, std::span<const std::uint64_t> v,
                                            std::size_t power, const PrimeField& field) {
  auto rows = reduce_rows(m, field);
  if (!rows) return std::nullopt;
  if (v.size() != m.n) throw DomainError("power_apply_nonzero_mod: vector length mismatch");
  std::vector<std::uint64_t> cur(v.begin(), v.end());
  std::vector<std::uint64_t> next(m.n);
  for (std::size_t k = 0; k < power; ++k) {
    bool any = false;
    for (std::size_t r = 0; r < m.n; ++r) {
      std::uint64_t acc = 0;
      for (const auto& [c, val] : (*rows)[r]) acc = field.add(acc, field.mul(val, cur[c]));
      next[r] = acc;
      any = any || acc != 0;
    }
    cur.swap(next);
    if (!any) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [](std::uint64_t x) { return x != 0; });
}

}  // namespace jacred
