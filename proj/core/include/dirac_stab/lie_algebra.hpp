#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "dirac_stab/chain_complex.hpp"
#include "dirac_stab/exterior.hpp"
#include "dirac_stab/linalg.hpp"

namespace dirac_stab {

/// c^k_{ij} with [e_i, e_j] = Σ_k c^k_{ij} e_k (0-based indices).
struct StructureConstant {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Rational value;
};

/// Dense structure tensor without any axiom checks. Used to assemble brackets and to
/// report Jacobi defects of candidate data.
class BracketTensor {
 public:
  BracketTensor() = default;
  explicit BracketTensor(std::size_t n) : n_(n), c_(n * n * n) {}

  std::size_t dim() const { return n_; }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  /// Sets c^k_{ij} and c^k_{ji} = -c^k_{ij}.
  void set_antisymmetric(std::size_t i, std::size_t j, std::size_t k, const Rational& value);

  RVector bracket(const RVector& u, const RVector& v) const;
  RVector bracket_basis(std::size_t i, std::size_t j) const;
  bool is_antisymmetric() const;
  bool is_zero() const;
  /// Basis triples (i<j<k) where the Jacobi identity fails.
  std::vector<std::array<std::size_t, 3>> jacobi_defects() const;
  friend bool operator==(const BracketTensor&, const BracketTensor&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> c_;
};

/// d e^k = -Σ_{i<j} c^k_{ij} e^i∧e^j extended as a degree +1 derivation; no axioms assumed.
ExtElement ce_differential(const BracketTensor& c, const ExtElement& alpha);

/// Finite-dimensional Lie algebra over Q; antisymmetry and Jacobi are verified on
/// construction.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(BracketTensor tensor);
  LieAlgebra(std::size_t n, const std::vector<StructureConstant>& constants);

  std::size_t dim() const { return c_.dim(); }
  const BracketTensor& tensor() const { return c_; }
  RVector bracket(const RVector& u, const RVector& v) const { return c_.bracket(u, v); }
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_.at(i, j, k); }

  /// Matrix of ad_u.
  RMatrix ad(const RVector& u) const;
  RMatrix killing_form() const;
  bool is_abelian() const { return c_.is_zero(); }

  /// Chevalley–Eilenberg differential on ∧•g*: d e^k = -Σ_{i<j} c^k_{ij} e^i∧e^j, extended
  /// as a degree +1 derivation.
  ExtElement ce_differential(const ExtElement& alpha) const { return dirac_stab::ce_differential(c_, alpha); }
  /// Degrees 0..min(dim, max_degree).
  ChainComplex ce_complex(std::size_t max_degree = static_cast<std::size_t>(-1)) const;

  bool is_subalgebra(const Subspace& s) const;
  bool is_ideal(const Subspace& s) const;
  /// Quotient g/s by an ideal, with basis the complement coordinates of s.
  LieAlgebra quotient(const Subspace& ideal) const;
  /// Bracket expressed in a new basis (columns of `basis` in old coordinates).
  LieAlgebra change_basis(const RMatrix& basis) const;
  Subspace derived_algebra() const;
  Subspace center() const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  BracketTensor c_;
};

/// Structure tensor of the direct sum g ⊕ h.
LieAlgebra direct_sum(const LieAlgebra& g, const LieAlgebra& h);

namespace lie_algebras {

LieAlgebra abelian(std::size_t n);
/// Compact form: [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2.
LieAlgebra su2();
/// [h,e]=2e, [h,f]=-2f, [e,f]=h in the basis (e, f, h).
LieAlgebra sl2();
/// Nonabelian 2-dimensional algebra: [e1,e2]=e2.
LieAlgebra aff1();
/// [e1,e2]=e3.
LieAlgebra heisenberg();

}  // namespace lie_algebras

}  // namespace dirac_stab
