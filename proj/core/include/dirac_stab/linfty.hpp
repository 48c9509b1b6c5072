#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirac_stab/chain_complex.hpp"
#include "dirac_stab/graded.hpp"

namespace dirac_stab {

/// One bracket value μ_k(x_{l_1}, …, x_{l_k}) = value, letters in any order.
struct BracketEntry {
  std::vector<Index> letters;
  GradedVector value;
};

/// Finite-dimensional L∞[1]-algebra: degree-1 graded symmetric brackets μ_1..μ_{k_max},
/// stored on canonical words only.
class LInftyAlgebra {
 public:
  using Table = std::map<SymWord, GradedVector>;

  LInftyAlgebra() = default;
  /// Entries landing on the same canonical word are summed. Throws if an entry breaks the
  /// degree +1 rule or has arity outside 1..k_max.
  LInftyAlgebra(GradedVectorSpace space, std::size_t k_max, const std::vector<BracketEntry>& entries);

  const GradedVectorSpace& space() const { return space_; }
  std::size_t k_max() const { return k_max_; }
  /// Nonzero entries of μ_k (empty for k = 0 or k > k_max).
  const Table& table(std::size_t k) const;
  std::size_t entry_count() const;

  /// μ_k on basis letters in the given order, with the Koszul sign of the reordering.
  GradedVector bracket_on_basis(std::vector<Index> letters) const;

  friend bool operator==(const LInftyAlgebra& a, const LInftyAlgebra& b) {
    return a.space_ == b.space_ && a.k_max_ == b.k_max_ && a.tables_ == b.tables_;
  }

 private:
  GradedVectorSpace space_;
  std::size_t k_max_ = 0;
  std::vector<Table> tables_;  // index = arity
};

/// μ_k(args) by multilinear extension. Returns zero for k > k_max; throws on a
/// non-homogeneous argument.
GradedVector eval_bracket(const LInftyAlgebra& alg, std::span<const GradedVector> args);

struct JacobiFailure {
  std::size_t n = 0;
  SymWord word;
  GradedVector residual;
};

struct JacobiReport {
  std::size_t n_max = 0;
  /// Identities with n above this bound have no nonzero term for arity reasons.
  std::size_t vacuous_above = 0;
  std::size_t words_evaluated = 0;
  std::vector<JacobiFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Checks Σ_i Σ_{σ ∈ Sh(i+1, n-i)} ε(σ) μ_{n-i+1}(μ_{i+1}(x_σ…), x_σ…) = 0 on every basis
/// word of length n+1, n = 0..n_max. The sum is accumulated from pairs of stored entries,
/// so only words carrying a nonzero composite term are ever touched.
JacobiReport check_jacobi(const LInftyAlgebra& alg, std::size_t n_max);
inline JacobiReport check_jacobi(const LInftyAlgebra& alg) { return check_jacobi(alg, 2 * alg.k_max()); }

/// The left side of the higher Jacobi identity on one word, evaluated term by term over
/// unshuffles. Slow; used to cross-check check_jacobi.
GradedVector jacobi_identity_value(const LInftyAlgebra& alg, const std::vector<Index>& letters);

/// Σ_i 1/i! μ_i(Q, …, Q). Throws unless Q is of degree 0.
GradedVector mc_residual(const LInftyAlgebra& alg, const GradedVector& q);

/// Brackets μ_k^Q = Σ_i 1/i! μ_{k+i}(Q, …, Q, −). The curvature term (k = 0) is dropped.
LInftyAlgebra twist(const LInftyAlgebra& alg, const GradedVector& q);

/// Subspace W with one component per degree, each kept in reduced echelon form in the
/// coordinates of that degree's basis (increasing index order). The complement of each
/// component is the span of its non-pivot coordinates.
class GradedSubspace {
 public:
  GradedSubspace() = default;
  /// Spanning vectors must be homogeneous.
  GradedSubspace(const GradedVectorSpace& space, const std::vector<GradedVector>& spanning);

  static GradedSubspace zero(const GradedVectorSpace& space) { return GradedSubspace(space, {}); }
  static GradedSubspace whole(const GradedVectorSpace& space);

  const std::vector<int>& degrees() const { return degrees_; }
  const Subspace& component(int degree) const;
  /// Indices of the space's basis of this degree, i.e. the coordinates of component(degree).
  const std::vector<Index>& coordinates(int degree) const;

  std::size_t dim(int degree) const { return component(degree).dim(); }
  std::size_t codim(int degree) const { return component(degree).codim(); }
  bool contains(const GradedVector& v) const;
  /// Reduced basis of all components, as vectors of the ambient space.
  std::vector<GradedVector> basis() const;

  /// Coordinates of v in V^d / W^d for a vector of degree d (zero vectors allowed).
  RVector quotient_coordinates(int degree, const GradedVector& v) const;
  /// The splitting σ_d: V^d/W^d → V^d.
  GradedVector lift(int degree, const RVector& coords) const;

 private:
  std::vector<int> degrees_;
  std::map<int, Subspace> parts_;
  std::map<int, std::vector<Index>> coords_;
  std::size_t ambient_ = 0;
};

struct SubalgebraCheck {
  bool is_subalgebra = true;
  std::vector<GradedVector> counterexample_args;  // empty when is_subalgebra
  GradedVector counterexample_value;
};

SubalgebraCheck is_subalgebra(const LInftyAlgebra& alg, const GradedSubspace& w);

/// Matrix of μ_1 from degree d to degree d+1 in the basis index order of each degree.
RMatrix unary_matrix(const LInftyAlgebra& alg, int degree);

/// (V, μ_1) over the full degree range of V. Throws if μ_1² ≠ 0.
ChainComplex differential_complex(const LInftyAlgebra& alg);

/// (V/W, μ̄_1^Q). Throws if W is not a subalgebra, Q ∉ W^0, or Q is not MC.
ChainComplex quotient_complex(const LInftyAlgebra& alg, const GradedSubspace& w, const GradedVector& q);

/// Dense double-precision copy of the polynomial maps needed for gauge flows:
/// Q ↦ Σ 1/i! μ_i(Q…Q) and (Q, X) ↦ μ_1^Q(X) for Q ∈ V^0, X ∈ V^{-1}.
class FloatBrackets {
 public:
  explicit FloatBrackets(const LInftyAlgebra& alg);

  std::size_t dim(int degree) const;
  /// Coordinates of a vector of the given degree in increasing basis-index order.
  std::vector<double> to_coords(int degree, const GradedVector& v) const;
  std::vector<double> to_coords(int degree, const std::vector<double>& full) const;
  const std::vector<Index>& indices(int degree) const;

  std::vector<double> mc_residual(const std::vector<double>& q) const;           // V^0 → V^1
  std::vector<double> twisted_unary(const std::vector<double>& q, const std::vector<double>& x) const;  // V^-1 → V^0

 private:
  struct Monomial {
    std::vector<std::size_t> q_letters;  // degree-0 positions, with repetition
    double weight = 0;                   // 1 / Π multiplicity!
    std::size_t x_letter = 0;            // degree -1 position (only for twisted_unary terms)
    std::vector<std::pair<std::size_t, double>> value;  // output positions and coefficients
  };
  std::map<int, std::vector<Index>> indices_;
  std::map<int, std::map<Index, std::size_t>> position_;
  std::vector<Monomial> mc_terms_;
  std::vector<Monomial> unary_terms_;
};

}  // namespace dirac_stab
