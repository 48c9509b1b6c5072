#include "dirac_stab/stability.hpp"

namespace dirac_stab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "STABLE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
    case Verdict::NotFixedPoint:
      return "NOT_FIXED_POINT";
  }
  return "?";
}

namespace {

Rational pair_with(const RMatrix& g, const RVector& x, const RVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (sgn(y[j]) != 0) s += x[i] * g(i, j) * y[j];
  }
  return s;
}

RVector unit(std::size_t n, std::size_t i) {
  RVector v(n);
  v[i] = 1;
  return v;
}

// Orthogonal of a subspace with respect to a bilinear form.
Subspace orthogonal(const RMatrix& g, const Subspace& s) {
  const std::size_t n = g.rows();
  RMatrix m(s.dim(), n);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    const RVector row = g.transpose().apply(s.basis()[i]);
    for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
  }
  if (s.dim() == 0) return Subspace::whole(n);
  return Subspace(n, kernel_basis(m));
}

}  // namespace

FixedPointGerm::FixedPointGerm(RMatrix pairing, std::vector<RVector> a_basis, LieAlgebra bracket,
                               Subspace anchor_kernel)
    : pairing_(std::move(pairing)), a_basis_(std::move(a_basis)), g_(std::move(bracket)),
      kernel_(std::move(anchor_kernel)) {
  const std::size_t n = pairing_.rows();
  if (pairing_.cols() != n || !(pairing_ == pairing_.transpose()))
    throw Error("germ: pairing must be a symmetric square matrix");
  if (sgn(determinant(pairing_)) == 0) throw Error("germ: pairing is degenerate");
  if (a_basis_.size() != g_.dim()) throw Error("germ: A_p basis and Lie algebra dimensions differ");
  if (2 * a_basis_.size() != n) throw Error("germ: A_p must have half the dimension of E_p");
  if (kernel_.ambient_dim() != n) throw Error("germ: ker rho lives in the wrong space");
  for (const auto& a : a_basis_)
    if (a.size() != n) throw Error("germ: A_p basis vector has the wrong length");
  if (Subspace(n, a_basis_).dim() != a_basis_.size()) throw Error("germ: A_p basis is linearly dependent");
  for (const auto& a : a_basis_)
    for (const auto& b : a_basis_)
      if (sgn(pair_with(pairing_, a, b)) != 0) throw Error("germ: A_p is not lagrangian");
  for (const auto& a : a_basis_)
    if (!kernel_.contains(a)) throw Error("germ: A_p is not contained in ker rho (not a fixed point)");
  a_matrix_ = RMatrix::from_columns(a_basis_, n);
}

RVector FixedPointGerm::a_coordinates(const RVector& v) const {
  const auto x = solve(a_matrix_, v);
  if (!x) throw Error("germ: vector is not in A_p");
  return *x;
}

Subspace ideal_h(const FixedPointGerm& germ) {
  const Subspace perp = orthogonal(germ.pairing(), germ.anchor_kernel());
  std::vector<RVector> coords;
  for (const auto& v : perp.basis()) {
    const auto x = solve(RMatrix::from_columns(germ.a_basis(), germ.ambient_dim()), v);
    if (!x) throw Error("ideal_h: (ker rho)^perp is not contained in A_p; germ data inconsistent");
    coords.push_back(*x);
  }
  const std::size_t n = germ.lie_algebra().dim();
  Subspace h(n, coords);
  if (!germ.lie_algebra().is_ideal(h)) throw Error("ideal_h: (ker rho)^perp is not an ideal of A_p; germ data inconsistent");
  return h;
}

std::vector<Subspace> annihilator_subcomplex(std::size_t n, const Subspace& h, std::size_t max_degree) {
  if (h.ambient_dim() != n) throw Error("annihilator_subcomplex: subspace lives in the wrong space");
  RMatrix m(h.dim(), n);
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h.basis()[i][j];
  return exterior_powers(h.dim() == 0 ? Subspace::whole(n) : Subspace(n, kernel_basis(m)), max_degree);
}

StabilityReport obstruction(const FixedPointGerm& germ) {
  StabilityReport r;
  const Subspace h = ideal_h(germ);
  const LieAlgebra& g = germ.lie_algebra();
  const std::size_t n = g.dim();
  const ChainComplex q = quotient_complex(g.ce_complex(3), annihilator_subcomplex(n, h, 3));
  for (int k = 0; k <= 3; ++k) r.complex_dims.push_back(q.dim(k));
  r.h2_dim = q.cohomology(2).dim;
  r.family_dim = q.kernel_dim(1);
  r.verdict = r.h2_dim == 0 ? Verdict::Stable : Verdict::Inconclusive;
  r.diagnostics.push_back("dim g = " + std::to_string(n) + ", dim h = " + std::to_string(h.dim()));
  r.diagnostics.push_back("h is an ideal of g");
  return r;
}

LesCheck les_consistency(const FixedPointGerm& germ) {
  LesCheck c;
  const Subspace h = ideal_h(germ);
  const LieAlgebra& g = germ.lie_algebra();
  c.h2_g = g.ce_complex(3).cohomology(2).dim;
  c.h3_quotient = g.quotient(h).ce_complex(4).cohomology(3).dim;
  c.obstruction_dim = obstruction(germ).h2_dim;
  c.consistent = !(c.h2_g == 0 && c.h3_quotient == 0) || c.obstruction_dim == 0;
  return c;
}

FixedPointGerm cartan_dirac_germ(const LieAlgebra& g, const RMatrix& metric) {
  const std::size_t n = g.dim();
  if (metric.rows() != n || metric.cols() != n) throw Error("cartan_dirac_germ: metric has the wrong size");
  if (!(metric == metric.transpose())) throw Error("cartan_dirac_germ: metric is not symmetric");
  if (sgn(determinant(metric)) == 0) throw Error("cartan_dirac_germ: metric is degenerate");
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w)
        if (sgn(pair_with(metric, g.tensor().bracket_basis(u, v), unit(n, w)) +
                pair_with(metric, unit(n, v), g.tensor().bracket_basis(u, w))) != 0)
          throw Error("cartan_dirac_germ: metric is not invariant");
  RMatrix pairing(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    pairing(i, n + i) = 1;
    pairing(n + i, i) = 1;
  }
  // a_i = (0, v_i♭) with v_i♭ = Σ_j metric(i, j) e^j; [v_i♭, v_j♭] = [v_i, v_j]♭.
  std::vector<RVector> a;
  std::vector<RVector> kernel;
  for (std::size_t i = 0; i < n; ++i) {
    RVector v(2 * n);
    for (std::size_t j = 0; j < n; ++j) v[n + j] = metric(i, j);
    a.push_back(std::move(v));
    kernel.push_back(unit(2 * n, n + i));
  }
  return FixedPointGerm(std::move(pairing), std::move(a), g, Subspace(2 * n, kernel));
}

FixedPointGerm germ_with_ideal(const LieAlgebra& g, const Subspace& h) {
  const std::size_t n = g.dim();
  if (h.ambient_dim() != n) throw Error("germ_with_ideal: subspace lives in the wrong space");
  RMatrix pairing(2 * n, 2 * n);
  std::vector<RVector> a, kernel;
  for (std::size_t i = 0; i < n; ++i) {
    pairing(i, n + i) = 1;
    pairing(n + i, i) = 1;
    a.push_back(unit(2 * n, i));
    kernel.push_back(unit(2 * n, i));
  }
  const std::vector<Subspace> ann = annihilator_subcomplex(n, h, 1);
  if (n > 0)
    for (const auto& eta : ann[1].basis()) {
      RVector v(2 * n);
      for (std::size_t j = 0; j < n; ++j) v[n + j] = eta[j];
      kernel.push_back(std::move(v));
    }
  return FixedPointGerm(std::move(pairing), std::move(a), g, Subspace(2 * n, kernel));
}

FixedPointGerm product(const FixedPointGerm& a, const FixedPointGerm& b) {
  const std::size_t na = a.ambient_dim(), nb = b.ambient_dim();
  RMatrix pairing(na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) pairing(i, j) = a.pairing()(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) pairing(na + i, na + j) = b.pairing()(i, j);
  auto embed = [&](const RVector& v, std::size_t offset) {
    RVector w(na + nb);
    for (std::size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
    return w;
  };
  std::vector<RVector> basis, kernel;
  for (const auto& v : a.a_basis()) basis.push_back(embed(v, 0));
  for (const auto& v : b.a_basis()) basis.push_back(embed(v, na));
  for (const auto& v : a.anchor_kernel().basis()) kernel.push_back(embed(v, 0));
  for (const auto& v : b.anchor_kernel().basis()) kernel.push_back(embed(v, na));
  return FixedPointGerm(std::move(pairing), std::move(basis), direct_sum(a.lie_algebra(), b.lie_algebra()),
                        Subspace(na + nb, kernel));
}

}  // namespace dirac_stab
