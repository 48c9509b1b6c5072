#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dirac_stab/rational.hpp"

namespace dirac_stab {

using RVector = std::vector<Rational>;

/// Dense row-major matrix over the rationals. Sizes at desk scale (a few hundred).
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RMatrix identity(std::size_t n);
  static RMatrix from_rows(const std::vector<RVector>& rows, std::size_t cols);
  static RMatrix from_columns(const std::vector<RVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RVector row(std::size_t r) const;
  RVector column(std::size_t c) const;

  RMatrix transpose() const;
  RVector apply(const RVector& v) const;
  bool is_zero() const;

  friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator+(const RMatrix& a, const RMatrix& b);
  friend RMatrix operator-(const RMatrix& a, const RMatrix& b);
  friend bool operator==(const RMatrix& a, const RMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination on the denominator-cleared matrix.
std::size_t rank(const RMatrix& m);

/// Determinant by Bareiss elimination. Requires a square matrix.
Rational determinant(const RMatrix& m);

struct RowEchelon {
  RMatrix rref;                      // only the nonzero rows
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form (pivots normalized to 1, zero rows dropped).
RowEchelon reduced_row_echelon(const RMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column, in increasing free-column order.
std::vector<RVector> kernel_basis(const RMatrix& m);

/// Some solution of m x = b, if one exists.
std::optional<RVector> solve(const RMatrix& m, const RVector& b);

/// Inverse of a square nonsingular matrix; throws Error when singular.
RMatrix inverse(const RMatrix& m);

/// A subspace of Q^n kept in reduced row echelon form. Its complement is the span of the
/// non-pivot coordinate vectors, which fixes the splitting used for quotients.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}
  Subspace(std::size_t ambient_dim, const std::vector<RVector>& spanning);

  static Subspace whole(std::size_t n);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return pivots_.size(); }
  const std::vector<RVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Coordinates not used as pivots, increasing. They index the quotient Q^n / S.
  const std::vector<std::size_t>& complement_coordinates() const { return complement_; }
  std::size_t codim() const { return complement_.size(); }

  /// v minus its component along the subspace (zero on pivot coordinates).
  RVector reduce(const RVector& v) const;
  bool contains(const RVector& v) const;
  bool contains(const Subspace& other) const;

  /// Class of v in Q^n / S in the complement coordinates.
  RVector quotient_coordinates(const RVector& v) const;
  /// The splitting: quotient coordinates to the vector supported on the complement.
  RVector lift(const RVector& quotient_coords) const;

  /// Reduced bases are canonical, so equal subspaces compare equal.
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  void rebuild(const std::vector<RVector>& spanning);

  std::size_t ambient_ = 0;
  std::vector<RVector> basis_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> complement_;
};

RVector operator+(const RVector& a, const RVector& b);
RVector operator-(const RVector& a, const RVector& b);
RVector operator*(const Rational& s, const RVector& v);
bool is_zero(const RVector& v);

}  // namespace dirac_stab
