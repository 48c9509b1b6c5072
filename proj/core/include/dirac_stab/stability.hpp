#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dirac_stab/chain_complex.hpp"
#include "dirac_stab/lie_algebra.hpp"

namespace dirac_stab {

enum class Verdict { Stable, Inconclusive, NotFixedPoint };

std::string to_string(Verdict v);

struct StabilityReport {
  Verdict verdict = Verdict::Inconclusive;
  std::size_t h2_dim = 0;
  /// dim ker of the degree-1 quotient differential.
  std::size_t family_dim = 0;
  /// Dimensions of the quotient complex in degrees 0..3.
  std::vector<std::size_t> complex_dims;
  std::vector<std::string> diagnostics;
};

/// Data at a fixed point p: E_p with its pairing, the Lagrangian A_p ⊆ ker ρ|_{E_p} with
/// its Lie bracket (structure constants in the given basis of A_p), and ker ρ|_{E_p}.
class FixedPointGerm {
 public:
  FixedPointGerm() = default;
  /// Throws unless A_p is lagrangian and contained in ker ρ.
  FixedPointGerm(RMatrix pairing, std::vector<RVector> a_basis, LieAlgebra bracket, Subspace anchor_kernel);

  std::size_t ambient_dim() const { return pairing_.rows(); }
  const RMatrix& pairing() const { return pairing_; }
  const std::vector<RVector>& a_basis() const { return a_basis_; }
  const LieAlgebra& lie_algebra() const { return g_; }
  const Subspace& anchor_kernel() const { return kernel_; }

  /// A_p coordinates of a vector of A_p. Throws if v ∉ A_p.
  RVector a_coordinates(const RVector& v) const;

 private:
  RMatrix pairing_;
  std::vector<RVector> a_basis_;
  LieAlgebra g_;
  Subspace kernel_;
  RMatrix a_matrix_;  // columns: a_basis_
};

/// 𝔥 = (ker ρ|_{E_p})^⊥ in A_p coordinates. Throws unless 𝔥 ⊆ A_p and [𝔤, 𝔥] ⊆ 𝔥.
Subspace ideal_h(const FixedPointGerm& germ);

/// ∧•𝔥° as a subcomplex of the CE complex of 𝔤 (one subspace per degree 0..min(dim 𝔤, max_degree)).
std::vector<Subspace> annihilator_subcomplex(std::size_t n, const Subspace& h,
                                             std::size_t max_degree = static_cast<std::size_t>(-1));

/// H² of ∧•𝔤*/∧•𝔥° with d̄_𝔤, the kernel dimension in degree 1 and the verdict.
StabilityReport obstruction(const FixedPointGerm& germ);

struct LesCheck {
  std::size_t h2_g = 0;
  std::size_t h3_quotient = 0;  // H³(𝔤/𝔥)
  std::size_t obstruction_dim = 0;
  bool consistent = true;
};

/// H²(𝔤) = 0 and H³(𝔤/𝔥) = 0 must force the obstruction to vanish.
LesCheck les_consistency(const FixedPointGerm& germ);

/// Germ at the unit of the Cartan-Dirac structure: E = 𝔤 ⊕ 𝔤*, A = 0 ⊕ 𝔤* spanned by
/// the v_i♭, ker ρ = 0 ⊕ 𝔤*. Throws unless the metric is symmetric, invariant and
/// nondegenerate.
FixedPointGerm cartan_dirac_germ(const LieAlgebra& g, const RMatrix& metric);

/// E = 𝔤 ⊕ 𝔤* with the hyperbolic pairing, A = 𝔤 ⊕ 0 and ker ρ = 𝔤 ⊕ 𝔥°, so that the
/// ideal of the germ is the given 𝔥 (A coordinates).
FixedPointGerm germ_with_ideal(const LieAlgebra& g, const Subspace& h);

/// Blockwise product of two germs.
FixedPointGerm product(const FixedPointGerm& a, const FixedPointGerm& b);

}  // namespace dirac_stab
