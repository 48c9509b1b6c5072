#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dirac_stab/linalg.hpp"
#include "dirac_stab/rational.hpp"

namespace dirac_stab {

using Index = std::uint32_t;

/// Finite-dimensional Z-graded vector space with one labelled basis vector per index.
/// Indices follow the lexicographic order of the labels, so every canonical form built
/// on indices is reproducible from the labels alone.
class GradedVectorSpace {
 public:
  struct BasisElement {
    std::string label;
    int degree = 0;
  };

  GradedVectorSpace() = default;
  explicit GradedVectorSpace(std::vector<BasisElement> basis);

  std::size_t dim() const { return basis_.size(); }
  const std::string& label(Index i) const { return basis_.at(i).label; }
  int degree(Index i) const { return basis_.at(i).degree; }
  bool is_odd(Index i) const { return (basis_[i].degree & 1) != 0; }
  std::optional<Index> find(const std::string& label) const;
  Index index_of(const std::string& label) const;  // throws on unknown labels

  std::set<int> degrees() const;
  std::size_t dim_of_degree(int degree) const { return indices_of_degree(degree).size(); }
  std::vector<Index> indices_of_degree(int degree) const;

  friend bool operator==(const GradedVectorSpace&, const GradedVectorSpace&);

 private:
  std::vector<BasisElement> basis_;
  std::map<std::string, Index> by_label_;
};

/// Sparse vector: sorted (index, nonzero coefficient) pairs.
class GradedVector {
 public:
  using Term = std::pair<Index, Rational>;

  GradedVector() = default;
  static GradedVector basis(Index i, Rational c = 1);
  static GradedVector from_dense(const RVector& dense);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(Index i) const;

  /// Adds c·e_i, keeping the representation canonical.
  void add(Index i, const Rational& c);
  void axpy(const Rational& c, const GradedVector& other);
  RVector to_dense(std::size_t dim) const;

  GradedVector& operator+=(const GradedVector& o);
  GradedVector& operator-=(const GradedVector& o);
  GradedVector& operator*=(const Rational& c);
  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(const Rational& c, GradedVector v) { return v *= c; }
  friend GradedVector operator-(GradedVector v) { return v *= Rational(-1); }
  friend bool operator==(const GradedVector&, const GradedVector&) = default;

 private:
  std::vector<Term> terms_;
};

/// Degree of a homogeneous vector; nullopt for zero or mixed vectors. Throws on labels
/// outside the space.
std::optional<int> homogeneous_degree(const GradedVector& v, const GradedVectorSpace& space);
bool is_homogeneous(const GradedVector& v, const GradedVectorSpace& space);

/// Koszul sign of x_0…x_{n-1} = ε(σ) x_{σ(0)}…x_{σ(n-1)} in S(V).
/// `permutation[a]` is the original position placed at slot a.
int koszul_sign(std::span<const std::size_t> permutation, std::span<const int> degrees);

/// All (p,q)-unshuffles of {0..p+q-1}: increasing on the first p and on the last q slots.
std::vector<std::vector<std::size_t>> unshuffles(std::size_t p, std::size_t q);

/// A monomial of the graded symmetric algebra on the basis: letters sorted by index.
class SymWord {
 public:
  SymWord() = default;

  /// Sorts `letters` into canonical order. Returns the Koszul sign of the reordering, or
  /// nullopt when an odd letter repeats (the monomial vanishes in S(V)).
  static std::optional<std::pair<SymWord, int>> canonical(std::vector<Index> letters,
                                                          const GradedVectorSpace& space);

  const std::vector<Index>& letters() const { return letters_; }
  std::size_t arity() const { return letters_.size(); }
  int total_degree(const GradedVectorSpace& space) const;
  std::string to_string(const GradedVectorSpace& space) const;

  friend auto operator<=>(const SymWord&, const SymWord&) = default;
  friend bool operator==(const SymWord&, const SymWord&) = default;

 private:
  explicit SymWord(std::vector<Index> sorted) : letters_(std::move(sorted)) {}
  std::vector<Index> letters_;
};

/// Number of C(n, k).
std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace dirac_stab
