#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dirac_stab/linalg.hpp"
#include "dirac_stab/rational.hpp"

namespace dirac_stab {

/// Wedge monomial e^{i_1}∧…∧e^{i_k} with i_1 < … < i_k, stored as a bit mask.
using ExtWord = std::uint32_t;

inline int word_degree(ExtWord w) { return std::popcount(w); }
std::vector<std::size_t> word_indices(ExtWord w);
ExtWord word_from_indices(const std::vector<std::size_t>& indices);

/// Basis of ∧^k of an n-dimensional space: all k-subsets as masks, increasing.
std::vector<ExtWord> exterior_basis(std::size_t n, std::size_t k);

/// Sign of e^a ∧ e^b relative to e^{a∪b}; 0 when the words overlap.
int wedge_sign(ExtWord a, ExtWord b);

/// Element of the exterior algebra over an n-dimensional space (n ≤ 32).
/// The same type serves for ∧•A* (forms) and ∧•A (multivectors).
class ExtElement {
 public:
  ExtElement() = default;
  explicit ExtElement(std::size_t n);

  static ExtElement one(std::size_t n);
  static ExtElement monomial(std::size_t n, ExtWord w, Rational c = 1);
  static ExtElement generator(std::size_t n, std::size_t i, Rational c = 1);
  /// Σ v_i e^i.
  static ExtElement from_vector(const RVector& v);

  std::size_t space_dim() const { return n_; }
  const std::map<ExtWord, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(ExtWord w) const;
  void add(ExtWord w, const Rational& c);

  /// Degree when homogeneous, -1 for zero or mixed elements.
  int degree() const;
  /// Component of the given wedge degree.
  ExtElement part(int degree) const;
  /// Coefficients of the degree-1 part as a dense vector.
  RVector linear_coefficients() const;

  ExtElement& operator+=(const ExtElement& o);
  ExtElement& operator-=(const ExtElement& o);
  ExtElement& operator*=(const Rational& c);
  friend ExtElement operator+(ExtElement a, const ExtElement& b) { return a += b; }
  friend ExtElement operator-(ExtElement a, const ExtElement& b) { return a -= b; }
  friend ExtElement operator-(ExtElement a) { return a *= Rational(-1); }
  friend ExtElement operator*(const Rational& c, ExtElement a) { return a *= c; }
  friend bool operator==(const ExtElement&, const ExtElement&) = default;

  std::string to_string(const std::string& symbol = "e") const;

 private:
  std::size_t n_ = 0;
  std::map<ExtWord, Rational> terms_;
};

ExtElement wedge(const ExtElement& a, const ExtElement& b);

/// Coordinates of a homogeneous element of degree k in the basis exterior_basis(n, k).
RVector coordinates(const ExtElement& e, std::size_t k);
/// Inverse of coordinates.
ExtElement from_coordinates(std::size_t n, std::size_t k, const RVector& v);

/// ∧^k S ⊆ ∧^k Q^n for k = 0..min(n, max_degree), in the coordinates of exterior_basis(n, k).
std::vector<Subspace> exterior_powers(const Subspace& s, std::size_t max_degree = static_cast<std::size_t>(-1));

/// Interior product ι_a α inserting a in the first slot. Throws when α has a nonzero
/// degree-0 component.
ExtElement contract(const RVector& a, const ExtElement& alpha);
/// ι_{e_i} on a monomial; zero when i is absent.
ExtElement contract_basis(std::size_t i, const ExtElement& alpha);

/// Pairing of a k-form with a k-vector by the determinant convention:
/// (e^I)(e_J) = δ_{IJ}.
Rational pair(const ExtElement& form, const ExtElement& multivector);

/// (α♯∧β♯∧γ♯)Ψ for forms α, β, γ and Ψ ∈ ∧³: Σ_σ sgn(σ) ι_{xσ1}α ∧ ι_{xσ2}β ∧ ι_{xσ3}γ
/// summed over the decomposables x1∧x2∧x3 of Ψ. Degree-0 parts of the forms contribute
/// nothing. Throws if Ψ is not of degree 3 or the output degree would be negative.
ExtElement triple_sharp(const ExtElement& alpha, const ExtElement& beta, const ExtElement& gamma,
                        const ExtElement& psi);

}  // namespace dirac_stab
