#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dirac_stab/exterior.hpp"
#include "dirac_stab/lie_algebra.hpp"
#include "dirac_stab/linfty.hpp"

namespace dirac_stab {

/// Courant algebroid over a point: a bracket and a symmetric pairing on E. Axioms are
/// not enforced on construction; check_courant_axioms reports on them.
class QuadraticLieAlgebra {
 public:
  QuadraticLieAlgebra() = default;
  QuadraticLieAlgebra(BracketTensor bracket, RMatrix pairing);

  std::size_t dim() const { return bracket_.dim(); }
  const BracketTensor& bracket_tensor() const { return bracket_; }
  const RMatrix& pairing_matrix() const { return pairing_; }
  RVector bracket(const RVector& x, const RVector& y) const { return bracket_.bracket(x, y); }
  Rational pairing(const RVector& x, const RVector& y) const;
  /// Matrix of ⟦x, ·⟧.
  RMatrix ad(const RVector& x) const;

 private:
  BracketTensor bracket_;
  RMatrix pairing_;
};

struct CourantReport {
  bool nondegenerate = true;
  std::vector<std::string> failures;
  bool passed() const { return nondegenerate && failures.empty(); }
};

/// Exact check of the Jacobi/Leibniz identity, invariance of the pairing, antisymmetry,
/// symmetry and nondegeneracy of the pairing, on basis elements.
CourantReport check_courant_axioms(const QuadraticLieAlgebra& e);

/// g ⊕ g* with ⟦X+ξ, Y+η⟧ = [X,Y] + L_X η − ι_Y dξ + ι_Y ι_X H and
/// ⟨X+ξ, Y+η⟩ = ξ(Y) + η(X). Basis order: g first, then the dual basis. Throws unless
/// d H = 0.
QuadraticLieAlgebra build_twisted_double(const LieAlgebra& g, const ExtElement& h);

/// H(u,v,w) = ½([u,v], w) for an invariant metric. Throws if the metric is not invariant.
ExtElement cartan_three_form(const LieAlgebra& g, const RMatrix& metric);

/// Basis of the closed 3-forms of g.
std::vector<ExtElement> closed_three_forms(const LieAlgebra& g);

struct DiracCheck {
  bool lagrangian = false;
  bool involutive = false;
  std::string witness;  // first failing pair, empty on success
  bool is_dirac() const { return lagrangian && involutive; }
};

bool is_lagrangian(const QuadraticLieAlgebra& e, const Subspace& a);
/// Throws when 2·dim A ≠ dim E.
DiracCheck is_dirac(const QuadraticLieAlgebra& e, const Subspace& a);

/// Lagrangian complement of a lagrangian subspace: start from the non-pivot coordinate
/// complement, make it dual to A's reduced basis, then remove the symmetric part.
Subspace lagrangian_complement(const QuadraticLieAlgebra& e, const Subspace& a);

/// Split data of a Dirac structure A with lagrangian complement K ≅ A*.
struct DeformationDatum {
  BracketTensor a_bracket;     // [·,·]_A in the basis a_i
  BracketTensor dual_bracket;  // [·,·]_{A*} in the dual basis η^i
  ExtElement psi;              // Ψ ∈ ∧³A, Ψ(η^i, η^j, η^k) = coefficient of a_i∧a_j∧a_k

  std::size_t rank() const { return a_bracket.dim(); }
};

class DiracSplit {
 public:
  DiracSplit() = default;
  /// Throws unless A is Dirac, K is lagrangian and E = A ⊕ K.
  DiracSplit(QuadraticLieAlgebra e, const Subspace& a, const Subspace& k);

  const QuadraticLieAlgebra& ambient() const { return e_; }
  const DeformationDatum& datum() const { return datum_; }
  std::size_t rank() const { return a_.size(); }
  /// Reduced basis of A and the basis k^i of K with ⟨k^i, a_j⟩ = δ_ij.
  const std::vector<RVector>& a_basis() const { return a_; }
  const std::vector<RVector>& k_basis() const { return k_; }

  /// Σ_i a_coords_i a_i + Σ_i eta_coords_i k^i.
  RVector embed(const RVector& a_coords, const RVector& eta_coords) const;
  RVector a_coordinates(const RVector& x) const;    // ⟨x, k^i⟩
  RVector eta_coordinates(const RVector& x) const;  // ⟨x, a_i⟩

  /// gr(ε♯) = {a + ι_a ε}.
  Subspace graph(const ExtElement& eps) const;
  /// Inverse of graph on lagrangian subspaces transverse to K. Throws otherwise.
  ExtElement extract_eps(const Subspace& l) const;

  /// Same A with complement {k + r♯k}, r ∈ ∧²A given as an antisymmetric matrix.
  DiracSplit with_shifted_complement(const RMatrix& r) const;

 private:
  QuadraticLieAlgebra e_;
  std::vector<RVector> a_, k_;
  DeformationDatum datum_;
};

inline DiracSplit split_data(const QuadraticLieAlgebra& e, const Subspace& a, const Subspace& k) {
  return DiracSplit(e, a, k);
}

/// Pairing on A ⊕ A*: ⟨(a, η), (b, ζ)⟩ = η(b) + ζ(a).
RMatrix hyperbolic_pairing(std::size_t n);

/// Bracket on A ⊕ A* assembled from the datum:
/// ([a1,a2]_A + L_{η1}a2 − ι_{η2}d_{A*}a1 + Ψ(η1,η2,·), [η1,η2]_{A*} + L_{a1}η2 − ι_{a2}d_Aη1).
BracketTensor reconstruct_bracket(const DeformationDatum& d);

/// L_η a = ι_η d_{A*} a for a ∈ A, η ∈ A*.
RVector lie_derivative_of_vector(const DeformationDatum& d, const RVector& eta, const RVector& a);
/// Vector Ψ(ξ, η, ·) ∈ A for 1-forms ξ, η.
RVector psi_contract(const DeformationDatum& d, const RVector& xi, const RVector& eta);

/// Extension of [·,·]_{A*} to ∧•A* by
/// [X1∧…∧Xp, Y1∧…∧Yq] = Σ (−1)^{r+s} [Xr, Ys] ∧ X1…X̂r…Xp ∧ Y1…Ŷs…Yq; scalars bracket to 0.
ExtElement schouten(const BracketTensor& bracket, const ExtElement& a, const ExtElement& b);

/// Forms on A as a graded space: e^I has degree |I| − 2; labels "w" followed by the
/// 1-based indices, so index order is the lexicographic order of those labels.
class FormSpace {
 public:
  FormSpace() = default;
  explicit FormSpace(std::size_t n);

  std::size_t rank() const { return n_; }
  const GradedVectorSpace& space() const { return space_; }
  Index index_of(ExtWord w) const { return index_.at(w); }
  ExtWord word_of(Index i) const { return words_.at(i); }
  GradedVector to_vector(const ExtElement& form) const;
  ExtElement to_form(const GradedVector& v) const;

 private:
  std::size_t n_ = 0;
  GradedVectorSpace space_;
  std::vector<ExtWord> words_;
  std::map<ExtWord, Index> index_;
};

/// The brackets of the deformation algebra as formulas on forms.
ExtElement deformation_mu1(const DeformationDatum& d, const ExtElement& a);
ExtElement deformation_mu2(const DeformationDatum& d, const ExtElement& a, const ExtElement& b);
ExtElement deformation_mu3(const DeformationDatum& d, const ExtElement& a, const ExtElement& b, const ExtElement& c);

struct DeformationAlgebra {
  FormSpace forms;
  LInftyAlgebra algebra;
};

/// μ1 = d_A, μ2(α,β) = (−1)^{|α|}[α,β]_{A*}, μ3(α,β,γ) = −(−1)^{|β|}(α♯∧β♯∧γ♯)Ψ on ∧•A*.
DeformationAlgebra deformation_algebra(const DeformationDatum& d);

/// e^{t ad_x} in double precision.
Eigen::MatrixXd courant_automorphism(const QuadraticLieAlgebra& e, const RVector& x, double t);

/// ε from a (numerical) subspace given by basis columns; fails when the projection to A
/// is singular (smallest singular value below `transversality_tol`).
struct FloatEps {
  bool ok = false;
  Eigen::MatrixXd eps;  // ε(a_i, a_j)
};
FloatEps extract_eps_numeric(const DiracSplit& split, const Eigen::MatrixXd& l_basis, double transversality_tol = 1e-8);

struct AutomorphismCheck {
  double max_deviation = 0;
  bool transversal = true;
  double first_bad_t = -1;
  bool flow_ok = true;
  std::vector<double> sample_times;
  std::vector<double> deviations;
};

/// Integrates the gauge flow of −ξ from ε and compares with ε_t read off from
/// e^{t ad_ξ} gr(ε♯) at `samples` equally spaced times.
AutomorphismCheck verify_prop_CAauto(const DiracSplit& split, const ExtElement& eps, const ExtElement& xi,
                                     double t_end, double step, std::size_t samples = 10);

/// ι_a[ξ,ε]_{A*} = [ξ, ε♯a]_{A*} − ε♯(L_ξ a).
bool verify_lemma_idLA(const DeformationDatum& d, const ExtElement& xi, const ExtElement& eps, const RVector& a);
/// −ε♯(Ψ(ξ, ε♯a, ·)) = ½ ι_a((ξ♯∧ε♯∧ε♯)Ψ).
bool verify_lemma_cubic(const DeformationDatum& d, const ExtElement& xi, const ExtElement& eps, const RVector& a);

}  // namespace dirac_stab
