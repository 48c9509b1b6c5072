#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dirac_stab/chain_complex.hpp"
#include "dirac_stab/exterior.hpp"
#include "dirac_stab/lie_algebra.hpp"
#include "dirac_stab/polynomial.hpp"
#include "dirac_stab/stability.hpp"

namespace dirac_stab {

/// Element of ∧^•(frame) or ∧^•(coframe) with polynomial coefficients. Which one is
/// meant is up to the caller, as with ExtElement.
class PolySection {
 public:
  PolySection() = default;
  PolySection(std::size_t rank, std::size_t nvars) : rank_(rank), nvars_(nvars) {}

  static PolySection function(std::size_t rank, const Polynomial& f);
  static PolySection monomial(std::size_t rank, ExtWord w, const Polynomial& c);
  /// e_i (or e^i) with coefficient 1.
  static PolySection generator(std::size_t rank, std::size_t nvars, std::size_t i);
  /// Constant-coefficient extension of a fiber element.
  static PolySection constant(const ExtElement& e, std::size_t nvars);

  std::size_t rank() const { return rank_; }
  std::size_t nvars() const { return nvars_; }
  const std::map<ExtWord, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Polynomial coefficient(ExtWord w) const;
  void add(ExtWord w, const Polynomial& c);

  /// Degree when homogeneous, -1 for zero or mixed sections.
  int degree() const;
  PolySection part(int degree) const;
  /// Largest total degree among the coefficients, -1 for zero.
  int coefficient_degree() const;
  ExtElement evaluate(const std::vector<Rational>& point) const;
  std::string to_string(const std::string& symbol = "e") const;

  PolySection& operator+=(const PolySection& o);
  PolySection& operator-=(const PolySection& o);
  PolySection& operator*=(const Rational& c);
  friend PolySection operator+(PolySection a, const PolySection& b) { return a += b; }
  friend PolySection operator-(PolySection a, const PolySection& b) { return a -= b; }
  friend PolySection operator-(PolySection a) { return a *= Rational(-1); }
  friend PolySection operator*(const Rational& c, PolySection a) { return a *= c; }
  friend PolySection operator*(const Polynomial& f, const PolySection& a);
  friend bool operator==(const PolySection&, const PolySection&) = default;

 private:
  void check_shape(const PolySection& o) const;

  std::size_t rank_ = 0;
  std::size_t nvars_ = 0;
  std::map<ExtWord, Polynomial> terms_;
};

PolySection wedge(const PolySection& a, const PolySection& b);
/// ι_X α for a section X of degree 1 and any α of the dual kind.
PolySection contract(const PolySection& x, const PolySection& alpha);

/// c^k_{ij}(x) in [e_i, e_j] = Σ_k c^k_{ij} e_k (0-based indices).
struct PolyStructureConstant {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Polynomial value;
};

/// Lie algebroid on the trivial bundle of rank r over Q^m with polynomial anchor and
/// structure functions. Axioms are not enforced on construction; check_algebroid reports.
class PolyLieAlgebroid {
 public:
  static constexpr int default_degree_cap = 6;

  PolyLieAlgebroid() = default;
  /// Each constant sets c^k_{ij} and c^k_{ji} = -c^k_{ij}; i = j or conflicting repeats throw.
  PolyLieAlgebroid(std::size_t nvars, std::vector<VectorField> anchor, const std::vector<PolyStructureConstant>& constants,
                   int degree_cap = default_degree_cap);

  /// Identity frame of Q^m with zero brackets.
  static PolyLieAlgebroid tangent(std::size_t m);
  /// Vector fields tangent to x1 x2 x3 = 0 in Q^4: ρ(e_i) = x_i ∂_i (i ≤ 3), ρ(e_4) = ∂_4.
  /// Extra coordinates x5, x6, ... carry no anchor and act as parameters.
  static PolyLieAlgebroid c_tangent(std::size_t extra_params = 0);
  /// g acting on Q^n by ρ(e_i) = -Σ_{j,k} c^k_{ij} x_j ∂_k. The tensor is not checked.
  static PolyLieAlgebroid action(const BracketTensor& c);

  std::size_t nvars() const { return nvars_; }
  std::size_t rank() const { return rank_; }
  int degree_cap() const { return cap_; }
  const VectorField& anchor(std::size_t i) const { return anchor_.at(i); }
  const Polynomial& constant(std::size_t i, std::size_t j, std::size_t k) const;
  /// ρ(e_i) f.
  Polynomial anchor_apply(std::size_t i, const Polynomial& f) const;
  /// [e_i, e_j] as a section of degree 1.
  PolySection frame_bracket(std::size_t i, std::size_t j) const;
  /// m × r matrix of ρ at p.
  RMatrix anchor_at(const std::vector<Rational>& p) const;

  /// Throws when a coefficient exceeds the degree cap or the shape does not match.
  void enforce(const PolySection& s, const std::string& what) const;

 private:
  std::size_t nvars_ = 0;
  std::size_t rank_ = 0;
  int cap_ = default_degree_cap;
  std::vector<VectorField> anchor_;
  std::vector<Polynomial> c_;  // (i * r + j) * r + k
};

struct AlgebroidReport {
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Antisymmetry, ρ([e_i,e_j]) = [ρ(e_i), ρ(e_j)] and the Jacobi identity with the Leibniz
/// corrections, all as exact polynomial identities on frame elements.
AlgebroidReport check_algebroid(const PolyLieAlgebroid& b);

/// Algebroid differential on forms: d f = Σ ρ(e_i)f e^i, d e^k = -Σ_{i<j} c^k_{ij} e^i∧e^j.
PolySection d_B(const PolyLieAlgebroid& b, const PolySection& alpha);

/// Schouten bracket of multivector sections, with [e_i, f] = ρ(e_i)f, degree p+q-1 and
/// [P,Q] = -(-1)^{(p-1)(q-1)}[Q,P].
PolySection schouten(const PolyLieAlgebroid& b, const PolySection& p, const PolySection& q);

/// π♯ξ := π(·, ξ) = -ι_ξ π for a bivector π and a 1-form ξ.
PolySection sharp(const PolySection& pi, const PolySection& xi);
/// (∧³π♯)H, the trivector (ξ,η,ζ) ↦ H(π♯ξ, π♯η, π♯ζ).
PolySection wedge3_sharp(const PolySection& pi, const PolySection& h);

/// [π,π] + 2(∧³π♯)H. Throws unless d_B H = 0.
PolySection twisted_poisson_residual(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h);

/// Section X + ξ of B ⊕ B*.
struct CourantSection {
  PolySection vector;
  PolySection form;
  friend bool operator==(const CourantSection&, const CourantSection&) = default;
};

/// ⟦X+ξ, Y+η⟧ = [X,Y] + L_X η - ι_Y dξ + ι_Y ι_X H on (B ⊕ B*)_H.
CourantSection courant_bracket(const PolyLieAlgebroid& b, const PolySection& h, const CourantSection& u,
                               const CourantSection& v);
/// exp(ω♯)(X + α) = X + α + ι_X ω.
CourantSection b_field_apply(const PolySection& omega, const CourantSection& u);

struct BFieldReport {
  PolySection target_twist;  // H - d_B ω
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
  bool intertwines() const { return failures.empty(); }
};

/// Checks exp(ω♯)⟦u,v⟧_H = ⟦exp(ω♯)u, exp(ω♯)v⟧_{H-dω} on frame and coframe sections and
/// their multiples by coordinates.
BFieldReport b_field_transform(const PolyLieAlgebroid& b, const PolySection& h, const PolySection& omega);

/// ρ_p ∘ π♯_p = 0.
bool is_fixed_point(const PolyLieAlgebroid& b, const PolySection& pi, const std::vector<Rational>& p);

/// Value at p of d_π P := [π,P] + ½ triple_sharp(π, π, P, H), the differential of the
/// graph of π acting on ∧•B.
ExtElement germ_differential(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                             const std::vector<Rational>& p, const PolySection& section);

struct GermComplex {
  std::vector<Rational> point;
  Subspace anchor_kernel;            // ker ρ_p ⊆ B_p
  ChainComplex fiber;                // ∧^k B_p, k = 1..3, constant extensions
  ChainComplex quotient;             // ∧^k B_p / ∧^k ker ρ_p, k = 1..3
  std::size_t perturbations_checked = 0;
};

/// Builds the quotient complex from constant extensions and checks that 10 (or
/// `perturbations`) seeded changes of extension within the subcomplex leave the
/// differential unchanged. Throws when p is not a fixed point, π is not twisted Poisson,
/// or a perturbation changes the result.
GermComplex germ_complex(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                         const std::vector<Rational>& p, std::uint64_t seed = 0, std::size_t perturbations = 10);

/// NOT_FIXED_POINT when ρ_p π♯_p ≠ 0; otherwise H² and the degree-1 kernel of the germ complex.
StabilityReport stability_verdict(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                                  const std::vector<Rational>& p, std::uint64_t seed = 0);

/// Lie algebra on T*_p Q^m with c^{ij}_k = ∂_k π^{ij}(p). Throws unless π_p = 0.
LieAlgebra linearized_lie_algebra(const PolySection& pi, const std::vector<Rational>& p);

/// E_p = B_p ⊕ B*_p, A_p = {π♯ξ + ξ} with the bracket of constant sections ξ + π♯ξ
/// evaluated at p, ker ρ_E = ker ρ_p ⊕ B*_p. A_p is spanned by the images of e^1..e^r.
FixedPointGerm induced_germ(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                            const std::vector<Rational>& p);

}  // namespace dirac_stab
