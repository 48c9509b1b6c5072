#include "dirac_stab/courant.hpp"

#include <cmath>

#include "dirac_stab/gauge.hpp"
#include "dirac_stab/numeric.hpp"

namespace dirac_stab {

namespace {

RVector unit(std::size_t n, std::size_t i) {
  RVector v(n);
  v[i] = 1;
  return v;
}

std::string basis_name(std::size_t i) { return "b" + std::to_string(i + 1); }

Rational antisym_entry(const ExtElement& two_form, std::size_t i, std::size_t j) {
  if (i == j) return 0;
  const ExtWord w = (ExtWord{1} << i) | (ExtWord{1} << j);
  const Rational c = two_form.coefficient(w);
  return i < j ? c : Rational(-c);
}

}  // namespace

QuadraticLieAlgebra::QuadraticLieAlgebra(BracketTensor bracket, RMatrix pairing)
    : bracket_(std::move(bracket)), pairing_(std::move(pairing)) {
  if (pairing_.rows() != bracket_.dim() || pairing_.cols() != bracket_.dim())
    throw Error("QuadraticLieAlgebra: pairing and bracket dimensions differ");
}

Rational QuadraticLieAlgebra::pairing(const RVector& x, const RVector& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (sgn(y[j]) != 0) s += x[i] * pairing_(i, j) * y[j];
  }
  return s;
}

RMatrix QuadraticLieAlgebra::ad(const RVector& x) const {
  const std::size_t n = dim();
  RMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const RVector col = bracket(x, unit(n, j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

CourantReport check_courant_axioms(const QuadraticLieAlgebra& e) {
  CourantReport r;
  const std::size_t n = e.dim();
  const RMatrix& g = e.pairing_matrix();
  if (!(g == g.transpose())) r.failures.push_back("pairing is not symmetric");
  r.nondegenerate = sgn(determinant(g)) != 0;
  std::vector<RVector> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(unit(n, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RVector xy = e.bracket(basis[i], basis[j]);
      if (!is_zero(xy + e.bracket(basis[j], basis[i])))
        r.failures.push_back("C5 (antisymmetry) fails on (" + basis_name(i) + ", " + basis_name(j) + ")");
      for (std::size_t k = 0; k < n; ++k) {
        const RVector lhs = e.bracket(basis[i], e.bracket(basis[j], basis[k]));
        const RVector rhs = e.bracket(xy, basis[k]) + e.bracket(basis[j], e.bracket(basis[i], basis[k]));
        if (!(lhs == rhs))
          r.failures.push_back("C1 (Leibniz) fails on (" + basis_name(i) + ", " + basis_name(j) + ", " +
                               basis_name(k) + ")");
        if (sgn(e.pairing(xy, basis[k]) + e.pairing(basis[j], e.bracket(basis[i], basis[k]))) != 0)
          r.failures.push_back("C4 (invariance) fails on (" + basis_name(i) + ", " + basis_name(j) + ", " +
                               basis_name(k) + ")");
      }
    }
  return r;
}

QuadraticLieAlgebra build_twisted_double(const LieAlgebra& g, const ExtElement& h) {
  const std::size_t n = g.dim();
  if (h.space_dim() != n) throw Error("build_twisted_double: H lives over the wrong space");
  for (const auto& [w, c] : h.terms())
    if (word_degree(w) != 3) throw Error("build_twisted_double: H must be a 3-form");
  if (!g.ce_differential(h).is_zero()) throw Error("build_twisted_double: H is not closed");
  BracketTensor t(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        // [X_i, X_j] + H(X_i, X_j, ·).
        t.at(i, j, k) = g.constant(i, j, k);
        if (i != j && k != i && k != j) {
          std::vector<std::size_t> idx{i, j, k};
          const ExtWord w = word_from_indices(idx);
          // Sign of the permutation sorting (i, j, k).
          int inv = (i > j) + (i > k) + (j > k);
          const Rational c = h.coefficient(w);
          t.at(i, j, n + k) = (inv % 2) ? Rational(-c) : c;
        }
        // ⟦X_i, ξ^k⟧ = ι_{X_i} dξ^k = -Σ_m c^k_{im} ξ^m, and ⟦ξ^k, X_i⟧ = -⟦X_i, ξ^k⟧.
        t.at(i, n + k, n + j) = -g.constant(i, j, k);
        t.at(n + k, i, n + j) = g.constant(i, j, k);
      }
    }
  RMatrix pairing(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    pairing(i, n + i) = 1;
    pairing(n + i, i) = 1;
  }
  return QuadraticLieAlgebra(std::move(t), std::move(pairing));
}

ExtElement cartan_three_form(const LieAlgebra& g, const RMatrix& metric) {
  const std::size_t n = g.dim();
  if (metric.rows() != n || metric.cols() != n) throw Error("cartan_three_form: metric has the wrong size");
  auto form = [&](const RVector& u, const RVector& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += u[i] * metric(i, j) * v[j];
    return s;
  };
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        if (sgn(form(g.tensor().bracket_basis(u, v), unit(n, w)) + form(unit(n, v), g.tensor().bracket_basis(u, w))) != 0)
          throw Error("cartan_three_form: metric is not invariant");
  ExtElement h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        h.add(word_from_indices({i, j, k}), Rational(1, 2) * form(g.tensor().bracket_basis(i, j), unit(n, k)));
  return h;
}

std::vector<ExtElement> closed_three_forms(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  const auto words = exterior_basis(n, 3);
  const ChainComplex c = g.ce_complex();
  std::vector<ExtElement> out;
  if (words.empty()) return out;
  for (const auto& z : kernel_basis(c.differential(3))) {
    ExtElement h(n);
    for (std::size_t i = 0; i < words.size(); ++i) h.add(words[i], z[i]);
    out.push_back(std::move(h));
  }
  return out;
}

bool is_lagrangian(const QuadraticLieAlgebra& e, const Subspace& a) {
  if (2 * a.dim() != e.dim()) return false;
  for (const auto& x : a.basis())
    for (const auto& y : a.basis())
      if (sgn(e.pairing(x, y)) != 0) return false;
  return true;
}

DiracCheck is_dirac(const QuadraticLieAlgebra& e, const Subspace& a) {
  if (a.ambient_dim() != e.dim()) throw Error("is_dirac: subspace lives in the wrong space");
  if (2 * a.dim() != e.dim()) throw Error("is_dirac: a Dirac subspace must have half the dimension of E");
  DiracCheck r;
  r.lagrangian = true;
  const auto& b = a.basis();
  for (std::size_t i = 0; i < b.size() && r.lagrangian; ++i)
    for (std::size_t j = i; j < b.size(); ++j)
      if (sgn(e.pairing(b[i], b[j])) != 0) {
        r.lagrangian = false;
        r.witness = "pairing of basis vectors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " is nonzero";
        break;
      }
  r.involutive = true;
  for (std::size_t i = 0; i < b.size() && r.involutive; ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      if (!a.contains(e.bracket(b[i], b[j]))) {
        r.involutive = false;
        if (r.witness.empty())
          r.witness = "bracket of basis vectors " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                      " leaves the subspace";
        break;
      }
  return r;
}

Subspace lagrangian_complement(const QuadraticLieAlgebra& e, const Subspace& a) {
  if (!is_lagrangian(e, a)) throw Error("lagrangian_complement: subspace is not lagrangian");
  const auto& comp = a.complement_coordinates();
  const auto& ab = a.basis();
  const std::size_t n = ab.size();
  RMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = e.pairing(unit(e.dim(), comp[i]), ab[j]);
  const RMatrix pinv = inverse(p);
  // c_i = Σ_m (P^{-1})_{mi} e_{comp[m]} satisfies ⟨c_i, a_j⟩ = δ_ij.
  std::vector<RVector> c(n, RVector(e.dim()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m)
      if (sgn(pinv(m, i)) != 0) c[i][comp[m]] += pinv(m, i);
  std::vector<RVector> k;
  for (std::size_t i = 0; i < n; ++i) {
    RVector ki = c[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Rational s = e.pairing(c[i], c[j]) / 2;
      if (sgn(s) != 0) ki = ki - s * ab[j];
    }
    k.push_back(std::move(ki));
  }
  return Subspace(e.dim(), k);
}

DiracSplit::DiracSplit(QuadraticLieAlgebra e, const Subspace& a, const Subspace& k) : e_(std::move(e)) {
  const DiracCheck check = is_dirac(e_, a);
  if (!check.is_dirac()) throw Error("split_data: A is not a Dirac subspace (" + check.witness + ")");
  if (k.ambient_dim() != e_.dim() || !is_lagrangian(e_, k)) throw Error("split_data: K is not lagrangian");
  a_ = a.basis();
  const std::size_t n = a_.size();
  const auto& kb = k.basis();
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = e_.pairing(kb[i], a_[j]);
  if (sgn(determinant(m)) == 0) throw Error("split_data: K is not complementary to A");
  const RMatrix inv = inverse(m);
  k_.assign(n, RVector(e_.dim()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (sgn(inv(i, l)) != 0) k_[i] = k_[i] + inv(i, l) * kb[l];

  datum_.a_bracket = BracketTensor(n);
  datum_.dual_bracket = BracketTensor(n);
  datum_.psi = ExtElement(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RVector aa = e_.bracket(a_[i], a_[j]);
      const RVector kk = e_.bracket(k_[i], k_[j]);
      for (std::size_t l = 0; l < n; ++l) {
        datum_.a_bracket.at(i, j, l) = e_.pairing(aa, k_[l]);
        datum_.dual_bracket.at(i, j, l) = e_.pairing(kk, a_[l]);
      }
    }
  std::vector<Rational> psi(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RVector kk = e_.bracket(k_[i], k_[j]);
      for (std::size_t l = 0; l < n; ++l) psi[(i * n + j) * n + l] = e_.pairing(kk, k_[l]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        const Rational& v = psi[(i * n + j) * n + l];
        if (v != -psi[(j * n + i) * n + l] || v != -psi[(i * n + l) * n + j])
          throw Error("split_data: Psi is not totally antisymmetric");
        if (i < j && j < l) datum_.psi.add(word_from_indices({i, j, l}), v);
      }
}

RVector DiracSplit::embed(const RVector& a_coords, const RVector& eta_coords) const {
  RVector x(e_.dim());
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (sgn(a_coords.at(i)) != 0) x = x + a_coords[i] * a_[i];
    if (sgn(eta_coords.at(i)) != 0) x = x + eta_coords[i] * k_[i];
  }
  return x;
}

RVector DiracSplit::a_coordinates(const RVector& x) const {
  RVector out(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) out[i] = e_.pairing(x, k_[i]);
  return out;
}

RVector DiracSplit::eta_coordinates(const RVector& x) const {
  RVector out(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) out[i] = e_.pairing(x, a_[i]);
  return out;
}

Subspace DiracSplit::graph(const ExtElement& eps) const {
  const std::size_t n = a_.size();
  if (eps.space_dim() != n) throw Error("graph: form over the wrong space");
  for (const auto& [w, c] : eps.terms())
    if (word_degree(w) != 2) throw Error("graph: epsilon must be a 2-form");
  std::vector<RVector> span;
  for (std::size_t i = 0; i < n; ++i) {
    RVector eta(n);
    for (std::size_t j = 0; j < n; ++j) eta[j] = antisym_entry(eps, i, j);
    span.push_back(embed(unit(n, i), eta));
  }
  return Subspace(e_.dim(), span);
}

ExtElement DiracSplit::extract_eps(const Subspace& l) const {
  const std::size_t n = a_.size();
  if (l.dim() != n) throw Error("extract_eps: subspace has the wrong dimension");
  std::vector<RVector> pa, pk;
  for (const auto& b : l.basis()) {
    pa.push_back(a_coordinates(b));
    pk.push_back(eta_coordinates(b));
  }
  const RMatrix p = RMatrix::from_columns(pa, n);
  if (sgn(determinant(p)) == 0) throw Error("extract_eps: subspace is not transverse to the complement");
  const RMatrix q = RMatrix::from_columns(pk, n);
  const RMatrix m = q * inverse(p);  // m(j, i) = ε(a_i, a_j)
  ExtElement eps(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m(j, i) != -m(i, j)) throw Error("extract_eps: induced form is not antisymmetric (not lagrangian)");
      if (i < j) eps.add(word_from_indices({i, j}), m(j, i));
    }
  return eps;
}

DiracSplit DiracSplit::with_shifted_complement(const RMatrix& r) const {
  const std::size_t n = a_.size();
  if (r.rows() != n || r.cols() != n) throw Error("with_shifted_complement: r has the wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r(i, j) != -r(j, i)) throw Error("with_shifted_complement: r must be antisymmetric");
  std::vector<RVector> k;
  for (std::size_t i = 0; i < n; ++i) {
    RVector ki = k_[i];
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(r(i, j)) != 0) ki = ki + r(i, j) * a_[j];
    k.push_back(std::move(ki));
  }
  return DiracSplit(e_, Subspace(e_.dim(), a_), Subspace(e_.dim(), k));
}

RMatrix hyperbolic_pairing(std::size_t n) {
  RMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, n + i) = 1;
    g(n + i, i) = 1;
  }
  return g;
}

RVector lie_derivative_of_vector(const DeformationDatum& d, const RVector& eta, const RVector& a) {
  // (L_η a)(ζ) = (d_{A*}a)(η, ζ) = -a([η, ζ]_{A*}).
  const std::size_t n = d.rank();
  RVector out(n);
  for (std::size_t m = 0; m < n; ++m) {
    const RVector br = d.dual_bracket.bracket(eta, unit(n, m));
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k) s += a[k] * br[k];
    out[m] = -s;
  }
  return out;
}

RVector psi_contract(const DeformationDatum& d, const RVector& xi, const RVector& eta) {
  const std::size_t n = d.rank();
  const ExtElement x = ExtElement::from_vector(xi), y = ExtElement::from_vector(eta);
  const ExtElement xy = wedge(x, y);
  RVector out(n);
  for (std::size_t m = 0; m < n; ++m) out[m] = pair(wedge(xy, ExtElement::generator(n, m)), d.psi);
  return out;
}

namespace {

// ι_a d_A η for η ∈ A*: component m is -η([a, a_m]_A).
RVector contract_d_form(const DeformationDatum& d, const RVector& a, const RVector& eta) {
  const std::size_t n = d.rank();
  RVector out(n);
  for (std::size_t m = 0; m < n; ++m) {
    const RVector br = d.a_bracket.bracket(a, unit(n, m));
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k) s += eta[k] * br[k];
    out[m] = -s;
  }
  return out;
}

}  // namespace

BracketTensor reconstruct_bracket(const DeformationDatum& d) {
  const std::size_t n = d.rank();
  BracketTensor t(2 * n);
  auto put = [&](std::size_t i, std::size_t j, const RVector& a_part, const RVector& eta_part) {
    for (std::size_t m = 0; m < n; ++m) {
      t.at(i, j, m) = a_part[m];
      t.at(i, j, n + m) = eta_part[m];
    }
  };
  const RVector zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RVector ai = unit(n, i), aj = unit(n, j);
      put(i, j, d.a_bracket.bracket_basis(i, j), zero);
      // ⟦a_i, η^j⟧ = (−ι_{η^j} d_{A*} a_i, L_{a_i} η^j).
      put(i, n + j, Rational(-1) * lie_derivative_of_vector(d, aj, ai), contract_d_form(d, ai, aj));
      // ⟦η^i, a_j⟧ = (L_{η^i} a_j, −ι_{a_j} d_A η^i).
      put(n + i, j, lie_derivative_of_vector(d, ai, aj), Rational(-1) * contract_d_form(d, aj, ai));
      put(n + i, n + j, psi_contract(d, ai, aj), d.dual_bracket.bracket_basis(i, j));
    }
  return t;
}

ExtElement schouten(const BracketTensor& bracket, const ExtElement& a, const ExtElement& b) {
  const std::size_t n = bracket.dim();
  if (a.space_dim() != n || b.space_dim() != n) throw Error("schouten: forms over the wrong space");
  std::vector<std::vector<ExtElement>> gen(n, std::vector<ExtElement>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gen[i][j] = ExtElement::from_vector(bracket.bracket_basis(i, j));
  ExtElement out(n);
  for (const auto& [wa, ca] : a.terms()) {
    const auto x = word_indices(wa);
    for (const auto& [wb, cb] : b.terms()) {
      const auto y = word_indices(wb);
      const Rational c = ca * cb;
      for (std::size_t r = 0; r < x.size(); ++r)
        for (std::size_t s = 0; s < y.size(); ++s) {
          if (gen[x[r]][y[s]].is_zero()) continue;
          const ExtElement rest_x = ExtElement::monomial(n, wa & ~(ExtWord{1} << x[r]));
          const ExtElement rest_y = ExtElement::monomial(n, wb & ~(ExtWord{1} << y[s]));
          const ExtElement term = wedge(wedge(gen[x[r]][y[s]], rest_x), rest_y);
          out += (((r + s) & 1) ? Rational(-c) : c) * term;
        }
    }
  }
  return out;
}

FormSpace::FormSpace(std::size_t n) : n_(n) {
  if (n > 9) throw Error("FormSpace: rank above 9 is not supported");
  std::vector<GradedVectorSpace::BasisElement> basis;
  std::map<std::string, ExtWord> by_label;
  for (ExtWord w = 0; w < (ExtWord{1} << n); ++w) {
    std::string label = "w";
    for (auto i : word_indices(w)) label += static_cast<char>('1' + i);
    basis.push_back({label, word_degree(w) - 2});
    by_label[label] = w;
  }
  space_ = GradedVectorSpace(basis);
  words_.resize(space_.dim());
  for (Index i = 0; i < space_.dim(); ++i) {
    words_[i] = by_label.at(space_.label(i));
    index_[words_[i]] = i;
  }
}

GradedVector FormSpace::to_vector(const ExtElement& form) const {
  if (form.space_dim() != n_) throw Error("FormSpace: form over the wrong space");
  GradedVector v;
  for (const auto& [w, c] : form.terms()) v.add(index_.at(w), c);
  return v;
}

ExtElement FormSpace::to_form(const GradedVector& v) const {
  ExtElement e(n_);
  for (const auto& [i, c] : v.terms()) e.add(words_.at(i), c);
  return e;
}

ExtElement deformation_mu1(const DeformationDatum& d, const ExtElement& a) { return ce_differential(d.a_bracket, a); }

ExtElement deformation_mu2(const DeformationDatum& d, const ExtElement& a, const ExtElement& b) {
  ExtElement out(d.rank());
  for (int p = 0; p <= static_cast<int>(d.rank()); ++p) {
    const ExtElement ap = a.part(p);
    if (ap.is_zero()) continue;
    const ExtElement br = schouten(d.dual_bracket, ap, b);
    out += (p % 2 ? Rational(-1) : Rational(1)) * br;
  }
  return out;
}

ExtElement deformation_mu3(const DeformationDatum& d, const ExtElement& a, const ExtElement& b, const ExtElement& c) {
  const std::size_t n = d.rank();
  ExtElement out(n);
  if (d.psi.is_zero()) return out;
  for (int p = 1; p <= static_cast<int>(n); ++p) {
    const ExtElement ap = a.part(p);
    if (ap.is_zero()) continue;
    for (int q = 1; q <= static_cast<int>(n); ++q) {
      const ExtElement bq = b.part(q);
      if (bq.is_zero()) continue;
      for (int r = 1; r <= static_cast<int>(n); ++r) {
        const ExtElement cr = c.part(r);
        if (cr.is_zero() || p + q + r < 3) continue;
        // −(−1)^{|β|}: the sign is −1 for even |β|.
        out += (q % 2 ? Rational(1) : Rational(-1)) * triple_sharp(ap, bq, cr, d.psi);
      }
    }
  }
  return out;
}

DeformationAlgebra deformation_algebra(const DeformationDatum& d) {
  const std::size_t n = d.rank();
  FormSpace forms(n);
  const auto& space = forms.space();
  const std::size_t dim = space.dim();
  std::vector<ExtElement> mono;
  for (Index i = 0; i < dim; ++i) mono.push_back(ExtElement::monomial(n, forms.word_of(i)));
  std::vector<BracketEntry> entries;
  for (Index i = 0; i < dim; ++i) {
    const ExtElement v = deformation_mu1(d, mono[i]);
    if (!v.is_zero()) entries.push_back({{i}, forms.to_vector(v)});
  }
  for (Index i = 0; i < dim; ++i)
    for (Index j = i; j < dim; ++j) {
      if (i == j && space.is_odd(i)) continue;
      const ExtElement v = deformation_mu2(d, mono[i], mono[j]);
      if (!v.is_zero()) entries.push_back({{i, j}, forms.to_vector(v)});
    }
  if (!d.psi.is_zero()) {
    for (Index i = 0; i < dim; ++i) {
      const int p = word_degree(forms.word_of(i));
      if (p == 0) continue;
      for (Index j = i; j < dim; ++j) {
        if (i == j && space.is_odd(i)) continue;
        const int q = word_degree(forms.word_of(j));
        if (q == 0) continue;
        for (Index k = j; k < dim; ++k) {
          if (k == j && space.is_odd(k)) continue;
          const int r = word_degree(forms.word_of(k));
          if (r == 0 || p + q + r < 3 || p + q + r - 3 > static_cast<int>(n)) continue;
          const ExtElement v = deformation_mu3(d, mono[i], mono[j], mono[k]);
          if (!v.is_zero()) entries.push_back({{i, j, k}, forms.to_vector(v)});
        }
      }
    }
  }
  return {forms, LInftyAlgebra(space, 3, entries)};
}

Eigen::MatrixXd courant_automorphism(const QuadraticLieAlgebra& e, const RVector& x, double t) {
  return expm(t * to_eigen(e.ad(x)));
}

FloatEps extract_eps_numeric(const DiracSplit& split, const Eigen::MatrixXd& l_basis, double transversality_tol) {
  const std::size_t n = split.rank();
  const Eigen::MatrixXd g = to_eigen(split.ambient().pairing_matrix());
  Eigen::MatrixXd abasis(2 * n, n), kbasis(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    abasis.col(static_cast<Eigen::Index>(i)) = to_eigen(split.a_basis()[i]);
    kbasis.col(static_cast<Eigen::Index>(i)) = to_eigen(split.k_basis()[i]);
  }
  const Eigen::MatrixXd p = kbasis.transpose() * g * l_basis;
  const Eigen::MatrixXd q = abasis.transpose() * g * l_basis;
  FloatEps out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p);
  if (svd.singularValues().minCoeff() < transversality_tol) return out;
  out.eps = (q * p.inverse()).transpose();
  out.ok = true;
  return out;
}

AutomorphismCheck verify_prop_CAauto(const DiracSplit& split, const ExtElement& eps, const ExtElement& xi,
                                     double t_end, double step, std::size_t samples) {
  const DeformationDatum& d = split.datum();
  const std::size_t n = d.rank();
  const DeformationAlgebra def = deformation_algebra(d);
  const FloatBrackets fb(def.algebra);
  const DVector q = fb.to_coords(0, def.forms.to_vector(eps));
  const DVector x = fb.to_coords(-1, def.forms.to_vector(-xi));
  const auto total_steps = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
  const std::size_t every = std::max<std::size_t>(1, total_steps / std::max<std::size_t>(1, samples));
  const FlowResult flow = gauge_flow(fb, q, x, t_end, step, every);

  AutomorphismCheck check;
  check.flow_ok = flow.ok;
  const RVector xi_e = split.embed(RVector(n), xi.linear_coefficients());
  const Subspace gr = split.graph(eps);
  Eigen::MatrixXd l0(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) l0.col(static_cast<Eigen::Index>(i)) = to_eigen(gr.basis()[i]);
  const auto& idx0 = fb.indices(0);
  for (std::size_t s = 0; s < flow.times.size(); ++s) {
    const double t = flow.times[s];
    const Eigen::MatrixXd lt = courant_automorphism(split.ambient(), xi_e, t) * l0;
    const FloatEps e = extract_eps_numeric(split, lt);
    if (!e.ok) {
      check.transversal = false;
      check.first_bad_t = t;
      break;
    }
    double dev = 0;
    for (std::size_t p = 0; p < idx0.size(); ++p) {
      const auto ij = word_indices(def.forms.word_of(idx0[p]));
      const double exact = e.eps(static_cast<Eigen::Index>(ij[0]), static_cast<Eigen::Index>(ij[1]));
      dev = std::max(dev, std::abs(exact - flow.path[s][p]));
    }
    check.sample_times.push_back(t);
    check.deviations.push_back(dev);
    check.max_deviation = std::max(check.max_deviation, dev);
  }
  return check;
}

bool verify_lemma_idLA(const DeformationDatum& d, const ExtElement& xi, const ExtElement& eps, const RVector& a) {
  const ExtElement lhs = contract(a, schouten(d.dual_bracket, xi, eps));
  const RVector l_xi_a = lie_derivative_of_vector(d, xi.linear_coefficients(), a);
  const ExtElement rhs = schouten(d.dual_bracket, xi, contract(a, eps)) - contract(l_xi_a, eps);
  return lhs == rhs;
}

bool verify_lemma_cubic(const DeformationDatum& d, const ExtElement& xi, const ExtElement& eps, const RVector& a) {
  const RVector v = psi_contract(d, xi.linear_coefficients(), contract(a, eps).linear_coefficients());
  const ExtElement lhs = -contract(v, eps);
  const ExtElement rhs = Rational(1, 2) * contract(a, triple_sharp(xi, eps, eps, d.psi));
  return lhs == rhs;
}

}  // namespace dirac_stab
