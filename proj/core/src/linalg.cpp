#include "dirac_stab/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace dirac_stab {

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<RVector>& rows, std::size_t cols) {
  RMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("RMatrix::from_rows: ragged input");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RMatrix RMatrix::from_columns(const std::vector<RVector>& columns, std::size_t rows) {
  RMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error("RMatrix::from_columns: ragged input");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RVector RMatrix::row(std::size_t r) const {
  return RVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RVector RMatrix::column(std::size_t c) const {
  RVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RVector RMatrix::apply(const RVector& v) const {
  if (v.size() != cols_) throw Error("RMatrix::apply: dimension mismatch");
  RVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(v[c]) != 0 && sgn((*this)(r, c)) != 0) acc += (*this)(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

bool RMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("RMatrix product: dimension mismatch");
  RMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (sgn(b(k, j)) != 0) out(i, j) += aik * b(k, j);
      }
    }
  return out;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("RMatrix sum: dimension mismatch");
  RMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("RMatrix difference: dimension mismatch");
  RMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

namespace {

// Rows scaled to integers (row-wise lcm of denominators); the row space is unchanged.
std::vector<std::vector<mpz_class>> integer_rows(const RMatrix& m) {
  std::vector<std::vector<mpz_class>> out(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    }
  }
  return out;
}

// Bareiss elimination in place; returns rank and, via `sign`, the row-swap parity.
std::size_t bareiss(std::vector<std::vector<mpz_class>>& a, std::size_t cols, int& sign) {
  const std::size_t rows = a.size();
  sign = 1;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const RMatrix& m) {
  auto a = integer_rows(m);
  int sign = 1;
  return bareiss(a, m.cols(), sign);
}

Rational determinant(const RMatrix& m) {
  if (m.rows() != m.cols()) throw Error("determinant: matrix not square");
  if (m.rows() == 0) return 1;
  // Clear denominators row by row and undo the scaling afterwards.
  Rational scale = 1;
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    scale *= Rational(l);
  }
  int sign = 1;
  const std::size_t rk = bareiss(a, m.cols(), sign);
  if (rk < m.rows()) return 0;
  Rational det(a[m.rows() - 1][m.cols() - 1]);
  det *= sign;
  det /= scale;
  return det;
}

RowEchelon reduced_row_echelon(const RMatrix& m) {
  std::vector<RVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return {RMatrix::from_rows(rows, cols), std::move(pivots)};
}

std::vector<RVector> kernel_basis(const RMatrix& m) {
  const auto ech = reduced_row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<RVector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.rref(i, free);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<RVector> solve(const RMatrix& m, const RVector& b) {
  if (b.size() != m.rows()) throw Error("solve: dimension mismatch");
  RMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto ech = reduced_row_echelon(aug);
  RVector x(m.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
    if (ech.pivots[i] == m.cols()) return std::nullopt;
    x[ech.pivots[i]] = ech.rref(i, m.cols());
  }
  return x;
}

RMatrix inverse(const RMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse: matrix not square");
  const std::size_t n = m.rows();
  RMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto ech = reduced_row_echelon(aug);
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) throw Error("inverse: singular matrix");
  RMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.rref(r, n + c);
  return inv;
}

Subspace::Subspace(std::size_t ambient_dim, const std::vector<RVector>& spanning) : ambient_(ambient_dim) {
  rebuild(spanning);
}

Subspace Subspace::whole(std::size_t n) {
  std::vector<RVector> e;
  for (std::size_t i = 0; i < n; ++i) {
    RVector v(n);
    v[i] = 1;
    e.push_back(std::move(v));
  }
  return Subspace(n, e);
}

void Subspace::rebuild(const std::vector<RVector>& spanning) {
  basis_.clear();
  pivots_.clear();
  complement_.clear();
  if (!spanning.empty()) {
    const auto ech = reduced_row_echelon(RMatrix::from_rows(spanning, ambient_));
    for (std::size_t r = 0; r < ech.rref.rows(); ++r) basis_.push_back(ech.rref.row(r));
    pivots_ = ech.pivots;
  }
  std::vector<bool> is_pivot(ambient_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  for (std::size_t c = 0; c < ambient_; ++c)
    if (!is_pivot[c]) complement_.push_back(c);
}

RVector Subspace::reduce(const RVector& v) const {
  if (v.size() != ambient_) throw Error("Subspace::reduce: dimension mismatch");
  RVector out = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Rational f = out[pivots_[i]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (sgn(basis_[i][j]) != 0) out[j] -= f * basis_[i][j];
    }
  }
  return out;
}

bool Subspace::contains(const RVector& v) const { return dirac_stab::is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const RVector& b) { return contains(b); });
}

RVector Subspace::quotient_coordinates(const RVector& v) const {
  const RVector r = reduce(v);
  RVector out(complement_.size());
  for (std::size_t i = 0; i < complement_.size(); ++i) out[i] = r[complement_[i]];
  return out;
}

RVector Subspace::lift(const RVector& quotient_coords) const {
  if (quotient_coords.size() != complement_.size()) throw Error("Subspace::lift: dimension mismatch");
  RVector out(ambient_);
  for (std::size_t i = 0; i < complement_.size(); ++i) out[complement_[i]] = quotient_coords[i];
  return out;
}

RVector operator+(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw Error("vector sum: dimension mismatch");
  RVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

RVector operator-(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) throw Error("vector difference: dimension mismatch");
  RVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

RVector operator*(const Rational& s, const RVector& v) {
  RVector out = v;
  for (auto& x : out) x *= s;
  return out;
}

bool is_zero(const RVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

}  // namespace dirac_stab
