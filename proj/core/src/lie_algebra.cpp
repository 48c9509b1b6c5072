#include "dirac_stab/lie_algebra.hpp"

#include <algorithm>
#include <map>

namespace dirac_stab {

void BracketTensor::set_antisymmetric(std::size_t i, std::size_t j, std::size_t k, const Rational& value) {
  if (i >= n_ || j >= n_ || k >= n_) throw Error("structure constant index out of range");
  if (i == j) {
    if (sgn(value) != 0) throw Error("structure constant [e_i, e_i] must vanish");
    return;
  }
  at(i, j, k) = value;
  at(j, i, k) = -value;
}

RVector BracketTensor::bracket(const RVector& u, const RVector& v) const {
  if (u.size() != n_ || v.size() != n_) throw Error("bracket: dimension mismatch");
  RVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (sgn(u[i]) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (sgn(v[j]) == 0) continue;
      const Rational uv = u[i] * v[j];
      for (std::size_t k = 0; k < n_; ++k) {
        const Rational& c = at(i, j, k);
        if (sgn(c) != 0) out[k] += uv * c;
      }
    }
  }
  return out;
}

RVector BracketTensor::bracket_basis(std::size_t i, std::size_t j) const {
  RVector out(n_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = at(i, j, k);
  return out;
}

bool BracketTensor::is_antisymmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (at(i, j, k) != -at(j, i, k)) return false;
  return true;
}

bool BracketTensor::is_zero() const {
  for (const auto& c : c_)
    if (sgn(c) != 0) return false;
  return true;
}

std::vector<std::array<std::size_t, 3>> BracketTensor::jacobi_defects() const {
  std::vector<std::array<std::size_t, 3>> out;
  auto e = [&](std::size_t i) {
    RVector v(n_);
    v[i] = 1;
    return v;
  };
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (std::size_t k = j + 1; k < n_; ++k) {
        const RVector s = bracket(e(i), bracket_basis(j, k)) + bracket(e(j), bracket_basis(k, i)) +
                          bracket(e(k), bracket_basis(i, j));
        if (!dirac_stab::is_zero(s)) out.push_back({i, j, k});
      }
  return out;
}

LieAlgebra::LieAlgebra(BracketTensor tensor) : c_(std::move(tensor)) {
  if (!c_.is_antisymmetric()) throw Error("LieAlgebra: bracket is not antisymmetric");
  const auto defects = c_.jacobi_defects();
  if (!defects.empty()) {
    const auto& d = defects.front();
    throw Error("LieAlgebra: Jacobi identity fails on (e" + std::to_string(d[0] + 1) + ", e" +
                std::to_string(d[1] + 1) + ", e" + std::to_string(d[2] + 1) + ")");
  }
}

namespace {

BracketTensor tensor_from(std::size_t n, const std::vector<StructureConstant>& constants) {
  BracketTensor t(n);
  for (const auto& s : constants) t.set_antisymmetric(s.i, s.j, s.k, s.value);
  return t;
}

}  // namespace

LieAlgebra::LieAlgebra(std::size_t n, const std::vector<StructureConstant>& constants)
    : LieAlgebra(tensor_from(n, constants)) {}

RMatrix LieAlgebra::ad(const RVector& u) const {
  const std::size_t n = dim();
  RMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RVector e(n);
    e[j] = 1;
    const RVector col = bracket(u, e);
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

RMatrix LieAlgebra::killing_form() const {
  const std::size_t n = dim();
  std::vector<RMatrix> ads;
  for (std::size_t i = 0; i < n; ++i) {
    RVector e(n);
    e[i] = 1;
    ads.push_back(ad(e));
  }
  RMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RMatrix p = ads[i] * ads[j];
      Rational tr = 0;
      for (std::size_t r = 0; r < n; ++r) tr += p(r, r);
      k(i, j) = tr;
    }
  return k;
}

ExtElement ce_differential(const BracketTensor& bracket, const ExtElement& alpha) {
  const std::size_t n = bracket.dim();
  if (alpha.space_dim() != n) throw Error("ce_differential: form over the wrong space");
  std::vector<ExtElement> dgen(n, ExtElement(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational& c = bracket.at(i, j, k);
        if (sgn(c) != 0) dgen[k].add((ExtWord{1} << i) | (ExtWord{1} << j), -c);
      }
  ExtElement out(n);
  for (const auto& [w, coeff] : alpha.terms()) {
    const auto idx = word_indices(w);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      // d(e^{i_0}∧…∧e^{i_k}) = Σ_r (-1)^r e^{i_0..i_{r-1}} ∧ d e^{i_r} ∧ e^{i_{r+1}..}.
      ExtWord before = 0, after = 0;
      for (std::size_t s = 0; s < idx.size(); ++s) {
        if (s < r) before |= ExtWord{1} << idx[s];
        if (s > r) after |= ExtWord{1} << idx[s];
      }
      ExtElement term =
          wedge(wedge(ExtElement::monomial(n, before), dgen[idx[r]]), ExtElement::monomial(n, after));
      out += ((r & 1) ? Rational(-coeff) : coeff) * term;
    }
  }
  return out;
}

ChainComplex LieAlgebra::ce_complex(std::size_t max_degree) const {
  const std::size_t n = dim();
  const std::size_t top = std::min(n, max_degree);
  std::vector<std::vector<ExtWord>> bases;
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k <= top; ++k) {
    bases.push_back(exterior_basis(n, k));
    dims.push_back(bases.back().size());
  }
  std::vector<RMatrix> maps;
  for (std::size_t k = 0; k < top; ++k) {
    RMatrix m(dims[k + 1], dims[k]);
    std::map<ExtWord, std::size_t> row_of;
    for (std::size_t r = 0; r < bases[k + 1].size(); ++r) row_of[bases[k + 1][r]] = r;
    for (std::size_t c = 0; c < bases[k].size(); ++c) {
      const ExtElement d = ce_differential(ExtElement::monomial(n, bases[k][c]));
      for (const auto& [w, coeff] : d.terms()) m(row_of.at(w), c) = coeff;
    }
    maps.push_back(std::move(m));
  }
  return ChainComplex(0, std::move(dims), std::move(maps));
}

bool LieAlgebra::is_subalgebra(const Subspace& s) const {
  for (const auto& u : s.basis())
    for (const auto& v : s.basis())
      if (!s.contains(bracket(u, v))) return false;
  return true;
}

bool LieAlgebra::is_ideal(const Subspace& s) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    RVector e(n);
    e[i] = 1;
    for (const auto& v : s.basis())
      if (!s.contains(bracket(e, v))) return false;
  }
  return true;
}

LieAlgebra LieAlgebra::quotient(const Subspace& ideal) const {
  if (!is_ideal(ideal)) throw Error("LieAlgebra::quotient: subspace is not an ideal");
  const auto& comp = ideal.complement_coordinates();
  BracketTensor t(comp.size());
  for (std::size_t a = 0; a < comp.size(); ++a)
    for (std::size_t b = 0; b < comp.size(); ++b) {
      const RVector q = ideal.quotient_coordinates(c_.bracket_basis(comp[a], comp[b]));
      for (std::size_t k = 0; k < comp.size(); ++k) t.at(a, b, k) = q[k];
    }
  return LieAlgebra(std::move(t));
}

LieAlgebra LieAlgebra::change_basis(const RMatrix& basis) const {
  const std::size_t n = dim();
  if (basis.rows() != n || basis.cols() != n) throw Error("change_basis: need a square matrix");
  const RMatrix inv = inverse(basis);
  BracketTensor t(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const RVector coords = inv.apply(bracket(basis.column(a), basis.column(b)));
      for (std::size_t k = 0; k < n; ++k) t.at(a, b, k) = coords[k];
    }
  return LieAlgebra(std::move(t));
}

Subspace LieAlgebra::derived_algebra() const {
  std::vector<RVector> span;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j) span.push_back(c_.bracket_basis(i, j));
  return Subspace(dim(), span);
}

Subspace LieAlgebra::center() const {
  const std::size_t n = dim();
  // z is central iff Σ_j z_j c^k_{ij} = 0 for all i, k.
  RMatrix m(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) m(i * n + k, j) = c_.at(i, j, k);
  return Subspace(n, kernel_basis(m));
}

LieAlgebra direct_sum(const LieAlgebra& g, const LieAlgebra& h) {
  const std::size_t a = g.dim(), b = h.dim();
  BracketTensor t(a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < a; ++j)
      for (std::size_t k = 0; k < a; ++k) t.at(i, j, k) = g.constant(i, j, k);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < b; ++k) t.at(a + i, a + j, a + k) = h.constant(i, j, k);
  return LieAlgebra(std::move(t));
}

namespace lie_algebras {

LieAlgebra abelian(std::size_t n) { return LieAlgebra(BracketTensor(n)); }

LieAlgebra su2() { return LieAlgebra(3, {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1}}); }

LieAlgebra sl2() { return LieAlgebra(3, {{2, 0, 0, 2}, {2, 1, 1, -2}, {0, 1, 2, 1}}); }

LieAlgebra aff1() { return LieAlgebra(2, {{0, 1, 1, 1}}); }

LieAlgebra heisenberg() { return LieAlgebra(3, {{0, 1, 2, 1}}); }

}  // namespace lie_algebras

}  // namespace dirac_stab
