#pragma once

#include <random>
#include <string>
#include <vector>

#include "dirac_stab/courant.hpp"
#include "dirac_stab/lie_algebra.hpp"
#include "support.hpp"

namespace test_support {

using namespace dirac_stab;

struct DoubleData {
  std::string name;
  LieAlgebra g;
  ExtElement h;
};

inline RMatrix identity_matrix(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline ExtElement top_form(std::size_t n) {
  ExtWord w = 0;
  for (std::size_t i = 0; i < n; ++i) w |= ExtWord{1} << i;
  return ExtElement::monomial(n, w);
}

/// Lie algebras of dimension ≤ max_dim together with a closed 3-form (random when the
/// space of closed 3-forms is nontrivial, otherwise zero), plus the untwisted version.
inline std::vector<DoubleData> double_catalog(std::mt19937_64& g, std::size_t max_dim) {
  namespace la = lie_algebras;
  std::vector<std::pair<std::string, LieAlgebra>> algebras = {
      {"abelian2", la::abelian(2)}, {"aff1", la::aff1()},
      {"abelian3", la::abelian(3)}, {"su2", la::su2()},
      {"sl2", la::sl2()},           {"heisenberg", la::heisenberg()},
      {"aff1+R", direct_sum(la::aff1(), la::abelian(1))},
      {"aff1+aff1", direct_sum(la::aff1(), la::aff1())},
      {"su2+R", direct_sum(la::su2(), la::abelian(1))},
      {"heisenberg+R", direct_sum(la::heisenberg(), la::abelian(1))},
      {"su2+aff1", direct_sum(la::su2(), la::aff1())},
      {"su2+su2", direct_sum(la::su2(), la::su2())},
  };
  std::vector<DoubleData> out;
  for (auto& [name, alg] : algebras) {
    if (alg.dim() > max_dim) continue;
    const std::size_t n = alg.dim();
    out.push_back({name, alg, ExtElement(n)});
    const auto closed = closed_three_forms(alg);
    if (closed.empty()) continue;
    ExtElement h(n);
    for (const auto& c : closed) h += random_rational(g, 2) * c;
    if (name == "su2") h = cartan_three_form(alg, identity_matrix(3));
    if (!h.is_zero()) out.push_back({name + "_H", alg, h});
  }
  return out;
}

inline RVector double_vector(std::size_t n, const RVector& x, const RVector& xi) {
  RVector v(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = x[i];
    v[n + i] = xi[i];
  }
  return v;
}

/// The Dirac subspaces s ⊕ s° of (g ⊕ g*)_H for s spanned by coordinate vectors.
inline std::vector<Subspace> coordinate_dirac_subspaces(const QuadraticLieAlgebra& e, std::size_t n) {
  std::vector<Subspace> out;
  for (ExtWord mask = 0; mask < (ExtWord{1} << n); ++mask) {
    std::vector<RVector> span;
    for (std::size_t i = 0; i < n; ++i) {
      RVector v(2 * n);
      v[(mask >> i) & 1 ? i : n + i] = 1;
      span.push_back(v);
    }
    Subspace a(2 * n, span);
    if (is_dirac(e, a).is_dirac()) out.push_back(std::move(a));
  }
  return out;
}

/// Image of a subspace under X + ξ ↦ X + ξ + ι_X ω, an automorphism of the double when
/// d ω = 0.
inline Subspace b_field_image(const Subspace& a, const ExtElement& omega, std::size_t n) {
  std::vector<RVector> span;
  for (const auto& v : a.basis()) {
    RVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = v[i];
    RVector w = v;
    if (!omega.is_zero()) {
      const ExtElement c = contract(x, omega);
      for (std::size_t j = 0; j < n; ++j) w[n + j] += c.coefficient(ExtWord{1} << j);
    }
    span.push_back(w);
  }
  return Subspace(2 * n, span);
}

inline RMatrix random_antisymmetric(std::mt19937_64& g, std::size_t n, int bound = 1) {
  RMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      r(i, j) = random_rational(g, bound);
      r(j, i) = -r(i, j);
    }
  return r;
}

struct DiracInstance {
  std::string name;
  DiracSplit split;
};

/// Seeded Dirac splits of twisted doubles: a coordinate Dirac subspace, moved by a random
/// closed B-field, with a lagrangian complement shifted by a random r ∈ ∧²A.
inline std::vector<DiracInstance> dirac_instances(std::mt19937_64& g, std::size_t count, std::size_t max_dim = 3) {
  const auto catalog = double_catalog(g, max_dim);
  std::vector<DiracInstance> out;
  std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
  while (out.size() < count) {
    const DoubleData& d = catalog[pick(g)];
    const std::size_t n = d.g.dim();
    const QuadraticLieAlgebra e = build_twisted_double(d.g, d.h);
    const auto candidates = coordinate_dirac_subspaces(e, n);
    std::uniform_int_distribution<std::size_t> pa(0, candidates.size() - 1);
    Subspace a = candidates[pa(g)];
    const auto closed2 = kernel_basis(d.g.ce_complex().differential(2));
    const auto words2 = exterior_basis(n, 2);
    ExtElement omega(n);
    for (const auto& z : closed2) {
      const Rational c = random_rational(g, 1);
      for (std::size_t i = 0; i < words2.size(); ++i) omega.add(words2[i], c * z[i]);
    }
    a = b_field_image(a, omega, n);
    const Subspace k = lagrangian_complement(e, a);
    DiracSplit base(e, a, k);
    out.push_back({d.name, base.with_shifted_complement(random_antisymmetric(g, n))});
  }
  return out;
}

inline QuadraticLieAlgebra su2_cartan_double() {
  return build_twisted_double(lie_algebras::su2(), cartan_three_form(lie_algebras::su2(), identity_matrix(3)));
}

/// A = 0 ⊕ g*, K = g ⊕ 0 in a twisted double.
inline DiracSplit cotangent_split(const QuadraticLieAlgebra& e) {
  const std::size_t n = e.dim() / 2;
  std::vector<RVector> a, k;
  for (std::size_t i = 0; i < n; ++i) {
    RVector u(2 * n), v(2 * n);
    u[n + i] = 1;
    v[i] = 1;
    a.push_back(u);
    k.push_back(v);
  }
  return DiracSplit(e, Subspace(2 * n, a), Subspace(2 * n, k));
}

/// Candidate ε ∈ ∧²A*: graphs of Dirac subspaces transverse to K (MC by construction),
/// single-term forms and dense random forms (mostly not MC).
inline std::vector<ExtElement> eps_candidates(std::mt19937_64& g, const DiracSplit& split, std::size_t count) {
  const std::size_t n = split.rank();
  const QuadraticLieAlgebra& e = split.ambient();
  std::vector<ExtElement> out;
  for (const auto& l : coordinate_dirac_subspaces(e, n)) {
    if (out.size() >= count / 3) break;
    try {
      out.push_back(split.extract_eps(l));
    } catch (const Error&) {
    }
  }
  const auto words = exterior_basis(n, 2);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::bernoulli_distribution coin(0.5);
  while (out.size() < count) {
    ExtElement eps(n);
    if (coin(g)) {
      eps.add(words[pick(g)], random_rational(g, 2));
    } else {
      eps = random_form(g, n, 2, 1);
    }
    out.push_back(std::move(eps));
  }
  return out;
}

/// ∧•𝔥° inside the forms on A, for 𝔥 ⊆ A given by vectors in a-coordinates.
inline GradedSubspace annihilator_forms(const FormSpace& forms, const std::vector<RVector>& h) {
  const std::size_t n = forms.rank();
  RMatrix m(h.size(), n);
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h[i][j];
  const auto ann = h.empty() ? Subspace::whole(n).basis() : kernel_basis(m);
  std::vector<ExtElement> gens;
  for (const auto& a : ann) gens.push_back(ExtElement::from_vector(a));
  std::vector<GradedVector> span;
  for (ExtWord mask = 0; mask < (ExtWord{1} << gens.size()); ++mask) {
    ExtElement w = ExtElement::one(n);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((mask >> i) & 1) w = wedge(w, gens[i]);
    if (!w.is_zero()) span.push_back(forms.to_vector(w));
  }
  return GradedSubspace(forms.space(), span);
}

struct GaugeInstance {
  std::string name;
  DeformationAlgebra def;
  GradedSubspace w;
  GradedVector q;
};

/// Deformation algebras of Dirac splits with a subalgebra W = ∧•𝔥° (𝔥 an ideal of A)
/// and an MC element Q ∈ W⁰. Half of the draws use semisimple A (where H⁰(V/W) tends to
/// vanish), the rest generic instances. With `need_h0_zero` only instances with
/// H⁰(V/W, μ̄₁^Q) = 0 are kept; otherwise V/W must be nonzero in degrees −1 and 0.
inline std::vector<GaugeInstance> gauge_instances(std::mt19937_64& g, std::size_t count, bool need_h0_zero) {
  namespace la = lie_algebras;
  const std::vector<std::pair<std::string, LieAlgebra>> semisimple = {
      {"su2", la::su2()}, {"sl2", la::sl2()}, {"su2+su2", direct_sum(la::su2(), la::su2())},
      {"su2+aff1", direct_sum(la::su2(), la::aff1())}};
  std::vector<GaugeInstance> out;
  std::bernoulli_distribution coin(0.5);
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 200 * count) throw Error("gauge_instances: could not find enough instances");
    std::string name;
    DiracSplit split;
    std::vector<std::vector<RVector>> ideals;
    if (coin(g)) {
      std::uniform_int_distribution<std::size_t> pick(0, semisimple.size() - 1);
      const auto& [gname, alg] = semisimple[pick(g)];
      const std::size_t n = alg.dim();
      const QuadraticLieAlgebra e = build_twisted_double(alg, ExtElement(n));
      std::vector<RVector> span;
      for (std::size_t i = 0; i < n; ++i) {
        RVector v(2 * n);
        v[i] = 1;
        span.push_back(v);
      }
      const auto closed2 = kernel_basis(alg.ce_complex().differential(2));
      const auto words2 = exterior_basis(n, 2);
      ExtElement omega(n);
      for (const auto& z : closed2) {
        const Rational c = random_rational(g, 1);
        for (std::size_t i = 0; i < words2.size(); ++i) omega.add(words2[i], c * z[i]);
      }
      const Subspace a = b_field_image(Subspace(2 * n, span), omega, n);
      split = DiracSplit(e, a, lagrangian_complement(e, a)).with_shifted_complement(random_antisymmetric(g, n));
      name = gname + "+g";
      std::vector<RVector> all, first;
      for (std::size_t i = 0; i < n; ++i) {
        RVector v(n);
        v[i] = 1;
        all.push_back(v);
        if (i < 3) first.push_back(v);
      }
      ideals = {all};
      if (n > 3) ideals.push_back(first);
    } else {
      auto inst = dirac_instances(g, 1, 3).front();
      split = inst.split;
      name = inst.name;
      const LieAlgebra a(split.datum().a_bracket);
      const std::size_t n = a.dim();
      ideals = {Subspace::whole(n).basis(), a.derived_algebra().basis(), a.center().basis()};
    }
    std::uniform_int_distribution<std::size_t> pick_ideal(0, ideals.size() - 1);
    const auto& h = ideals[pick_ideal(g)];
    DeformationAlgebra def = deformation_algebra(split.datum());
    GradedSubspace w = annihilator_forms(def.forms, h);
    if (!is_subalgebra(def.algebra, w).is_subalgebra) continue;
    if (w.codim(-1) == 0 || w.codim(0) == 0) continue;
    std::vector<GradedVector> qs{GradedVector{}};
    for (const auto& eps : eps_candidates(g, split, 6)) {
      const GradedVector v = def.forms.to_vector(eps);
      if (!v.is_zero() && w.contains(v) && mc_residual(def.algebra, v).is_zero()) qs.push_back(v);
    }
    const GradedVector q = qs[std::uniform_int_distribution<std::size_t>(0, qs.size() - 1)(g)];
    if (need_h0_zero && quotient_complex(def.algebra, w, q).cohomology(0).dim != 0) continue;
    out.push_back({name, std::move(def), std::move(w), q});
  }
  return out;
}

}  // namespace test_support
