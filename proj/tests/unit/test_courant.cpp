#include "doctest.h"
#include "dirac_instances.hpp"

#include <cmath>

#include "dirac_stab/courant.hpp"
#include "dirac_stab/numeric.hpp"

using namespace dirac_stab;
using namespace test_support;

namespace {

RVector unit(std::size_t n, std::size_t i) {
  RVector v(n);
  v[i] = 1;
  return v;
}

ExtElement vector_form(const RVector& v) { return ExtElement::from_vector(v); }

bool is_mc(const DeformationAlgebra& def, const ExtElement& eps) {
  return mc_residual(def.algebra, def.forms.to_vector(eps)).is_zero();
}

// (∧³ε♯)Ψ with ε♯a = ι_a ε, computed term by term.
ExtElement wedge3_sharp(const ExtElement& eps, const ExtElement& psi) {
  const std::size_t n = eps.space_dim();
  ExtElement out(n);
  for (const auto& [w, c] : psi.terms()) {
    const auto idx = word_indices(w);
    ExtElement t = c * contract(unit(n, idx[0]), eps);
    t = wedge(t, contract(unit(n, idx[1]), eps));
    t = wedge(t, contract(unit(n, idx[2]), eps));
    out += t;
  }
  return out;
}

}  // namespace

TEST_CASE("courant axioms hold on abelian algebras and twisted doubles") {
  const QuadraticLieAlgebra flat(BracketTensor(4), hyperbolic_pairing(2));
  CHECK(check_courant_axioms(flat).passed());
  auto g = rng(1);
  for (const auto& d : double_catalog(g, 4)) {
    CAPTURE(d.name);
    const auto report = check_courant_axioms(build_twisted_double(d.g, d.h));
    CHECK(report.passed());
  }
}

TEST_CASE("a corrupted structure constant is reported") {
  const QuadraticLieAlgebra e = su2_cartan_double();
  BracketTensor t = e.bracket_tensor();
  t.at(0, 1, 2) += 1;
  t.at(1, 0, 2) -= 1;
  const auto report = check_courant_axioms(QuadraticLieAlgebra(t, e.pairing_matrix()));
  CHECK_FALSE(report.passed());
  CHECK_FALSE(report.failures.empty());

  const QuadraticLieAlgebra degenerate(BracketTensor(2), RMatrix(2, 2));
  CHECK_FALSE(check_courant_axioms(degenerate).passed());
}

TEST_CASE("twisted double construction") {
  SUBCASE("abelian, H = 0 gives the hyperbolic pairing and zero bracket") {
    const auto e = build_twisted_double(lie_algebras::abelian(2), ExtElement(2));
    CHECK(e.bracket_tensor().is_zero());
    CHECK(e.pairing_matrix() == hyperbolic_pairing(2));
  }
  SUBCASE("H must be closed") {
    const LieAlgebra g = direct_sum(lie_algebras::aff1(), lie_algebras::abelian(2));
    const ExtElement h = ExtElement::monomial(4, word_from_indices({1, 2, 3}));
    CHECK_FALSE(g.ce_differential(h).is_zero());
    CHECK_THROWS_AS(build_twisted_double(g, h), Error);
  }
  SUBCASE("bracket formula on mixed pairs") {
    const LieAlgebra g = lie_algebras::aff1();
    const auto e = build_twisted_double(g, ExtElement(2));
    // [X_1, ξ^2] = L_{X_1} ξ^2 = -ξ^2 ∘ ad_{X_1} = -ξ^2 since [e1, e2] = e2.
    CHECK(e.bracket(unit(4, 0), unit(4, 3)) == Rational(-1) * unit(4, 3));
    CHECK(e.bracket(unit(4, 3), unit(4, 0)) == unit(4, 3));
    CHECK(is_zero(e.bracket(unit(4, 2), unit(4, 3))));
  }
  SUBCASE("Cartan 3-form of su2 with the identity metric") {
    const ExtElement h = cartan_three_form(lie_algebras::su2(), identity_matrix(3));
    CHECK(h.coefficient(word_from_indices({0, 1, 2})) == Rational(1, 2));
    CHECK(check_courant_axioms(su2_cartan_double()).passed());
    RMatrix bad = identity_matrix(3);
    bad(1, 1) = 2;
    CHECK_THROWS_AS(cartan_three_form(lie_algebras::su2(), bad), Error);
  }
}

TEST_CASE("Dirac subspaces of doubles") {
  const std::size_t n = 3;
  std::vector<RVector> g_part, dual_part;
  for (std::size_t i = 0; i < n; ++i) {
    g_part.push_back(unit(2 * n, i));
    dual_part.push_back(unit(2 * n, n + i));
  }
  const Subspace g0(2 * n, g_part), dual(2 * n, dual_part);

  const auto plain = build_twisted_double(lie_algebras::su2(), ExtElement(3));
  CHECK(is_dirac(plain, g0).is_dirac());
  CHECK(is_dirac(plain, dual).is_dirac());

  const auto twisted = su2_cartan_double();
  const DiracCheck c = is_dirac(twisted, g0);
  CHECK(c.lagrangian);
  CHECK_FALSE(c.involutive);
  CHECK_FALSE(c.witness.empty());
  CHECK(is_dirac(twisted, dual).is_dirac());

  CHECK_THROWS_AS(is_dirac(twisted, Subspace(2 * n, {unit(2 * n, 0)})), Error);

  const auto flat = build_twisted_double(lie_algebras::abelian(3), ExtElement(3));
  const DiracSplit s(flat, g0, dual);
  auto gen = rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const ExtElement eps = random_form(gen, 3, 2);
    CHECK(is_dirac(flat, s.graph(eps)).is_dirac());
  }
  const DiracCheck mixed = is_dirac(flat, Subspace(2 * n, {unit(6, 0), unit(6, 1), unit(6, 3)}));
  CHECK_FALSE(mixed.lagrangian);
}

TEST_CASE("split data of the standard splits") {
  SUBCASE("A = g*, K = g in the Cartan double") {
    const DiracSplit s = cotangent_split(su2_cartan_double());
    const auto& d = s.datum();
    CHECK(d.a_bracket.is_zero());
    const LieAlgebra g = lie_algebras::su2();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) CHECK(d.dual_bracket.at(i, j, k) == g.constant(i, j, k));
    CHECK(d.psi == cartan_three_form(g, identity_matrix(3)));
  }
  SUBCASE("A = g, K = g* with H = 0") {
    const auto e = build_twisted_double(lie_algebras::sl2(), ExtElement(3));
    std::vector<RVector> a, k;
    for (std::size_t i = 0; i < 3; ++i) {
      a.push_back(unit(6, i));
      k.push_back(unit(6, 3 + i));
    }
    const DiracSplit s(e, Subspace(6, a), Subspace(6, k));
    const LieAlgebra g = lie_algebras::sl2();
    CHECK(s.datum().psi.is_zero());
    CHECK(s.datum().dual_bracket.is_zero());
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t m = 0; m < 3; ++m) CHECK(s.datum().a_bracket.at(i, j, m) == g.constant(i, j, m));
  }
  SUBCASE("invalid inputs") {
    const auto e = su2_cartan_double();
    std::vector<RVector> g_part;
    for (std::size_t i = 0; i < 3; ++i) g_part.push_back(unit(6, i));
    const Subspace g0(6, g_part);
    CHECK_THROWS_AS(DiracSplit(e, g0, g0), Error);
    const DiracSplit s = cotangent_split(e);
    std::vector<RVector> dual;
    for (std::size_t i = 0; i < 3; ++i) dual.push_back(unit(6, 3 + i));
    CHECK_THROWS_AS(DiracSplit(e, Subspace(6, dual), Subspace(6, dual)), Error);
  }
}

TEST_CASE("reconstruction round trip") {
  auto g = rng(3);
  for (const auto& inst : dirac_instances(g, 30, 4)) {
    CAPTURE(inst.name);
    const DiracSplit& s = inst.split;
    const std::size_t n = s.rank();
    const BracketTensor t = reconstruct_bracket(s.datum());
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = 0; j < 2 * n; ++j) {
        const RVector u = i < n ? s.embed(unit(n, i), RVector(n)) : s.embed(RVector(n), unit(n, i - n));
        const RVector v = j < n ? s.embed(unit(n, j), RVector(n)) : s.embed(RVector(n), unit(n, j - n));
        const RVector br = s.ambient().bracket(u, v);
        const RVector expect = double_vector(n, s.a_coordinates(br), s.eta_coordinates(br));
        CHECK(t.bracket_basis(i, j) == expect);
      }
    const QuadraticLieAlgebra rebuilt(t, hyperbolic_pairing(n));
    CHECK(check_courant_axioms(rebuilt).passed());

    std::vector<RVector> a, k;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(unit(2 * n, i));
      k.push_back(unit(2 * n, n + i));
    }
    const DiracSplit again(rebuilt, Subspace(2 * n, a), Subspace(2 * n, k));
    CHECK(again.datum().a_bracket.at(0, 0, 0) == 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m) {
          CHECK(again.datum().a_bracket.at(i, j, m) == s.datum().a_bracket.at(i, j, m));
          CHECK(again.datum().dual_bracket.at(i, j, m) == s.datum().dual_bracket.at(i, j, m));
        }
    CHECK(again.datum().psi == s.datum().psi);
  }
}

TEST_CASE("reconstruct_bracket on degenerate data") {
  DeformationDatum d{BracketTensor(3), BracketTensor(3), ExtElement(3)};
  CHECK(reconstruct_bracket(d).is_zero());
  d.psi = ExtElement::monomial(3, word_from_indices({0, 1, 2}));
  const BracketTensor t = reconstruct_bracket(d);
  // Only ⟦η^i, η^j⟧ = Ψ(η^i, η^j, ·) survives.
  CHECK(t.at(3, 4, 2) == 1);
  CHECK(t.at(4, 3, 2) == -1);
  CHECK(t.at(3, 5, 1) == -1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      CHECK(is_zero(t.bracket_basis(i, j)));
      CHECK(is_zero(t.bracket_basis(j, i)));
    }
}

TEST_CASE("Schouten extension rules") {
  auto g = rng(4);
  const LieAlgebra alg = lie_algebras::sl2();
  const BracketTensor& c = alg.tensor();
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<std::size_t> deg(0, 3);
    const std::size_t p = deg(g), q = deg(g), r = deg(g);
    const ExtElement a = random_form(g, 3, p), b = random_form(g, 3, q), e = random_form(g, 3, r);
    const int sa = static_cast<int>(p) - 1, sb = static_cast<int>(q) - 1;
    // [a, b] = -(-1)^{(p-1)(q-1)} [b, a].
    const Rational anti = ((sa * sb) % 2 == 0) ? -1 : 1;
    CHECK(schouten(c, a, b) == anti * schouten(c, b, a));
    // [a, b ∧ e] = [a, b] ∧ e + (-1)^{(p-1)q} b ∧ [a, e].
    const Rational lsign = ((sa * static_cast<int>(q)) % 2 == 0) ? 1 : -1;
    CHECK(schouten(c, a, wedge(b, e)) == wedge(schouten(c, a, b), e) + lsign * wedge(b, schouten(c, a, e)));
  }
  CHECK(schouten(c, ExtElement::one(3), random_form(g, 3, 2)).is_zero());
  CHECK(schouten(c, ExtElement::generator(3, 0), ExtElement::generator(3, 1)) ==
        ExtElement::from_vector(c.bracket_basis(0, 1)));
}

TEST_CASE("deformation algebras satisfy the higher Jacobi identities") {
  auto g = rng(5);
  for (const auto& inst : dirac_instances(g, 12, 3)) {
    CAPTURE(inst.name);
    const DeformationAlgebra def = deformation_algebra(inst.split.datum());
    const JacobiReport report = check_jacobi(def.algebra, 6);
    CHECK(report.passed());
  }
}

TEST_CASE("the minus sign of the ternary bracket is required") {
  // Flipping μ_3 is only visible where μ_2 alone fails the Jacobi identity, so rank 4
  // instances are included.
  auto g = rng(6);
  std::size_t caught = 0, eligible = 0;
  for (const auto& inst : dirac_instances(g, 16, 4)) {
    const DeformationAlgebra def = deformation_algebra(inst.split.datum());
    if (def.algebra.table(3).empty()) continue;
    ++eligible;
    std::vector<BracketEntry> flipped;
    for (std::size_t k = 1; k <= 3; ++k)
      for (const auto& [w, v] : def.algebra.table(k))
        flipped.push_back({w.letters(), k == 3 ? Rational(-1) * v : v});
    const LInftyAlgebra wrong(def.algebra.space(), 3, flipped);
    if (!check_jacobi(wrong, 6).passed()) ++caught;
  }
  CHECK(eligible > 0);
  CHECK(caught > 0);
}

TEST_CASE("abelian data gives vanishing brackets") {
  DeformationDatum d{BracketTensor(3), BracketTensor(3), ExtElement(3)};
  const DeformationAlgebra def = deformation_algebra(d);
  CHECK(def.algebra.entry_count() == 0);
  auto g = rng(7);
  CHECK(is_mc(def, random_form(g, 3, 2)));
}

TEST_CASE("MC elements of the cotangent split are twisted Poisson bivectors") {
  auto g = rng(8);
  for (const auto& d : double_catalog(g, 3)) {
    CAPTURE(d.name);
    const DiracSplit s = cotangent_split(build_twisted_double(d.g, d.h));
    const DeformationAlgebra def = deformation_algebra(s.datum());
    for (int trial = 0; trial < 5; ++trial) {
      const ExtElement pi = random_form(g, d.g.dim(), 2);
      const ExtElement expect =
          Rational(1, 2) * schouten(d.g.tensor(), pi, pi) - wedge3_sharp(pi, s.datum().psi);
      CHECK(def.forms.to_form(mc_residual(def.algebra, def.forms.to_vector(pi))) == expect);
    }
  }
}

TEST_CASE("MC elements are exactly the Dirac graphs") {
  auto g = rng(9);
  std::size_t mc_count = 0, total = 0;
  for (const auto& inst : dirac_instances(g, 10, 3)) {
    const DeformationAlgebra def = deformation_algebra(inst.split.datum());
    for (const auto& eps : eps_candidates(g, inst.split, 6)) {
      const bool mc = is_mc(def, eps);
      const bool dirac = is_dirac(inst.split.ambient(), inst.split.graph(eps)).is_dirac();
      CAPTURE(inst.name);
      CHECK(mc == dirac);
      mc_count += mc;
      ++total;
    }
  }
  CHECK(mc_count > 0);
  CHECK(mc_count < total);
}

TEST_CASE("graph and extract_eps are inverse") {
  auto g = rng(10);
  for (const auto& inst : dirac_instances(g, 10, 3)) {
    const DiracSplit& s = inst.split;
    const std::size_t n = s.rank();
    std::vector<RVector> a = s.a_basis();
    CHECK(s.graph(ExtElement(n)) == Subspace(2 * n, a));
    for (int trial = 0; trial < 5; ++trial) {
      const ExtElement eps = random_form(g, n, 2);
      CHECK(s.extract_eps(s.graph(eps)) == eps);
    }
    CHECK_THROWS_AS(s.extract_eps(Subspace(2 * n, s.k_basis())), Error);
  }
}

TEST_CASE("lagrangian subspaces transverse to K have antisymmetric ε") {
  auto g = rng(11);
  const auto e = build_twisted_double(lie_algebras::abelian(2), ExtElement(2));
  const DiracSplit s = cotangent_split(e);
  std::size_t lagrangian = 0, transverse = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Subspace l(4, {random_vector(g, 4, 1), random_vector(g, 4, 1)});
    if (l.dim() != 2) continue;
    bool extracted = true;
    try {
      s.extract_eps(l);
    } catch (const Error&) {
      extracted = false;
    }
    RMatrix p(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) p(i, j) = s.a_coordinates(l.basis()[j])[i];
    const bool is_transverse = sgn(determinant(p)) != 0;
    const bool is_lag = is_lagrangian(e, l);
    CHECK(extracted == (is_lag && is_transverse));
    lagrangian += is_lag;
    transverse += is_lag && is_transverse;
  }
  CHECK(transverse > 0);
}

TEST_CASE("Courant automorphisms") {
  const auto e = su2_cartan_double();
  const Eigen::MatrixXd gram = to_eigen(e.pairing_matrix());
  CHECK((courant_automorphism(e, RVector(6), 0.7) - Eigen::MatrixXd::Identity(6, 6)).norm() == 0.0);
  auto g = rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    RVector xi(6);
    for (std::size_t i = 3; i < 6; ++i) xi[i] = random_rational(g, 2);
    const Eigen::MatrixXd m = courant_automorphism(e, xi, 0.8);
    CHECK((m.transpose() * gram * m - gram).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXd split = courant_automorphism(e, xi, 0.3) * courant_automorphism(e, xi, 0.5);
    CHECK((split - m).cwiseAbs().maxCoeff() < 1e-10);

    // Dirac subspaces stay Dirac: pairing and involutivity in floating point.
    const DiracSplit s = cotangent_split(e);
    Eigen::MatrixXd a(6, 3);
    for (std::size_t i = 0; i < 3; ++i) a.col(static_cast<Eigen::Index>(i)) = to_eigen(s.a_basis()[i]);
    const Eigen::MatrixXd b = m * a;
    CHECK((b.transpose() * gram * b).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXd proj = b * (b.transpose() * b).inverse() * b.transpose();
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 3; ++j) {
        Eigen::VectorXd br = Eigen::VectorXd::Zero(6);
        for (std::size_t p = 0; p < 6; ++p)
          for (std::size_t q = 0; q < 6; ++q)
            for (std::size_t r = 0; r < 6; ++r)
              br(static_cast<Eigen::Index>(r)) += b(static_cast<Eigen::Index>(p), i) *
                                                  b(static_cast<Eigen::Index>(q), j) *
                                                  e.bracket_tensor().at(p, q, r).get_d();
        CHECK((br - proj * br).norm() < 1e-10);
      }
  }
}

TEST_CASE("gauge flow matches transport by e^{t ad ξ}") {
  SUBCASE("ξ = 0") {
    const DiracSplit s = cotangent_split(su2_cartan_double());
    auto g = rng(13);
    const ExtElement eps = Rational(1, 10) * random_form(g, 3, 2, 1);
    const AutomorphismCheck c = verify_prop_CAauto(s, eps, ExtElement(3), 1.0, 1e-2);
    CHECK(c.max_deviation < 1e-14);
  }
  SUBCASE("abelian double") {
    const auto e = build_twisted_double(lie_algebras::abelian(3), ExtElement(3));
    const DiracSplit s = cotangent_split(e);
    auto g = rng(14);
    const AutomorphismCheck c =
        verify_prop_CAauto(s, random_form(g, 3, 2), ExtElement::from_vector(random_vector(g, 3)), 1.0, 1e-2);
    CHECK(c.transversal);
    CHECK(c.max_deviation < 1e-12);
  }
  SUBCASE("su2 double, small data") {
    auto g = rng(15);
    for (const auto& inst : dirac_instances(g, 4, 3)) {
      if (inst.name != "su2_H" && inst.name != "su2") continue;
      const DeformationAlgebra def = deformation_algebra(inst.split.datum());
      for (const auto& eps : eps_candidates(g, inst.split, 3)) {
        if (!is_mc(def, eps)) continue;
        const ExtElement small = eps;
        const ExtElement xi = Rational(1, 20) * ExtElement::from_vector(random_vector(g, 3, 1));
        const AutomorphismCheck c = verify_prop_CAauto(inst.split, small, xi, 1.0, 1e-3);
        CHECK(c.flow_ok);
        if (c.transversal) CHECK(c.max_deviation < 1e-6);
      }
    }
    const DiracSplit s = cotangent_split(su2_cartan_double());
    const ExtElement xi = Rational(1, 10) * vector_form(RVector{Rational(1), Rational(-1, 2), Rational(1, 3)});
    const AutomorphismCheck c = verify_prop_CAauto(s, ExtElement(3), xi, 1.0, 1e-3);
    CHECK(c.transversal);
    CHECK(c.max_deviation < 1e-6);
    CHECK(c.sample_times.size() >= 10);
  }
}

TEST_CASE("the two lemmas of the gauge equation") {
  SUBCASE("zero arguments") {
    const DiracSplit s = cotangent_split(su2_cartan_double());
    auto g = rng(16);
    const ExtElement eps = random_form(g, 3, 2);
    const ExtElement xi = vector_form(random_vector(g, 3));
    const RVector a = random_vector(g, 3);
    CHECK(verify_lemma_idLA(s.datum(), ExtElement(3), eps, a));
    CHECK(verify_lemma_idLA(s.datum(), xi, ExtElement(3), a));
    CHECK(verify_lemma_idLA(s.datum(), xi, eps, RVector(3)));
    CHECK(verify_lemma_cubic(s.datum(), ExtElement(3), eps, a));
    CHECK(verify_lemma_cubic(s.datum(), xi, ExtElement(3), a));
  }
  SUBCASE("decomposable Ψ and unit inputs") {
    DeformationDatum d{BracketTensor(3), lie_algebras::su2().tensor(), ExtElement::monomial(3, 0b111)};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (auto w : exterior_basis(3, 2)) {
          const ExtElement xi = ExtElement::generator(3, i), eps = ExtElement::monomial(3, w);
          CHECK(verify_lemma_cubic(d, xi, eps, unit(3, j)));
          CHECK(verify_lemma_idLA(d, xi, eps, unit(3, j)));
        }
  }
  SUBCASE("seeded random instances") {
    auto g = rng(17);
    const auto instances = dirac_instances(g, 20, 3);
    for (int trial = 0; trial < 200; ++trial) {
      const auto& d = instances[static_cast<std::size_t>(trial) % instances.size()].split.datum();
      const std::size_t n = d.rank();
      const ExtElement xi = vector_form(random_vector(g, n));
      const ExtElement eps = random_form(g, n, 2);
      const RVector a = random_vector(g, n);
      CHECK(verify_lemma_idLA(d, xi, eps, a));
      CHECK(verify_lemma_cubic(d, xi, eps, a));
    }
  }
  SUBCASE("the cubic identity for triple_sharp") {
    auto g = rng(18);
    for (int trial = 0; trial < 20; ++trial) {
      const ExtElement psi = random_form(g, 4, 3);
      const DeformationDatum d{BracketTensor(4), BracketTensor(4), psi};
      const ExtElement xi = vector_form(random_vector(g, 4));
      const ExtElement eps = random_form(g, 4, 2);
      const RVector a = random_vector(g, 4);
      const ExtElement lhs = contract(a, triple_sharp(xi, eps, eps, psi));
      const RVector eps_a = contract(a, eps).linear_coefficients();
      // 2Ψ(ξ, ε♯a, ε♯·): component m is 2Ψ(ξ, ε♯a, ε♯e_m).
      ExtElement rhs(4);
      for (std::size_t m = 0; m < 4; ++m) {
        const ExtElement col = contract(unit(4, m), eps);
        rhs.add(ExtWord{1} << m, 2 * pair(wedge(wedge(xi, vector_form(eps_a)), col), psi));
      }
      CHECK(lhs == rhs);
    }
  }
}
