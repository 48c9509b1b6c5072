#include "doctest.h"
#include "dirac_instances.hpp"

#include <cmath>

#include "dirac_stab/gauge.hpp"

using namespace dirac_stab;
using namespace test_support;

namespace {

DVector random_dvector(std::mt19937_64& g, std::size_t n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  DVector v(n);
  for (auto& x : v) x = u(g);
  return v;
}

double max_diff(const DVector& a, const DVector& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

DVector scaled(DVector v, double c) {
  for (auto& x : v) x *= c;
  return v;
}

// Float MC element of a Dirac deformation algebra with a random small gauge parameter.
struct FlowCase {
  DeformationAlgebra def;
  DVector q, x;
};

std::vector<FlowCase> flow_cases(std::mt19937_64& g, std::size_t count, double x_scale) {
  std::vector<FlowCase> out;
  for (const auto& inst : dirac_instances(g, count, 3)) {
    DeformationAlgebra def = deformation_algebra(inst.split.datum());
    const FloatBrackets fb(def.algebra);
    GradedVector q;
    for (const auto& eps : eps_candidates(g, inst.split, 6)) {
      const GradedVector v = def.forms.to_vector(eps);
      if (!v.is_zero() && mc_residual(def.algebra, v).is_zero()) {
        q = v;
        break;
      }
    }
    out.push_back({def, fb.to_coords(0, q), random_dvector(g, fb.dim(-1), x_scale)});
  }
  return out;
}

}  // namespace

TEST_CASE("zero gauge parameter leaves Q fixed") {
  auto g = rng(1);
  for (auto& c : flow_cases(g, 5, 0.1)) {
    const FloatBrackets fb(c.def.algebra);
    const FlowResult r = gauge_flow(fb, c.q, DVector(c.x.size(), 0.0), 1.0, 1e-2);
    CHECK(r.ok);
    CHECK(max_diff(r.endpoint, c.q) == 0.0);
    CHECK(r.times.front() == 0.0);
    CHECK(r.times.back() == doctest::Approx(1.0));
    for (std::size_t i = 1; i < r.times.size(); ++i) CHECK(r.times[i] > r.times[i - 1]);
  }
}

TEST_CASE("linear algebras flow by μ1(X)") {
  // V^{-1} = span{a, b}, V^0 = span{c, d}; μ1(a) = c + 2d, μ1(b) = -d.
  GradedVectorSpace space({{"a", -1}, {"b", -1}, {"c", 0}, {"d", 0}});
  GradedVector ma, mb;
  ma.add(2, 1);
  ma.add(3, 2);
  mb.add(3, -1);
  const LInftyAlgebra alg(space, 1, {{{0}, ma}, {{1}, mb}});
  GradedVector q, x;
  q.add(2, Rational(1, 3));
  x.add(0, Rational(1, 2));
  x.add(1, 3);
  const FlowResult r = gauge_flow(alg, q, x, 1.0, 1e-1);
  CHECK(r.endpoint[0] == doctest::Approx(1.0 / 3 + 0.5).epsilon(1e-14));
  CHECK(r.endpoint[1] == doctest::Approx(1.0 - 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(gauge_flow(alg, x, x), Error);
}

TEST_CASE("flows stay on the MC set and are reversible") {
  auto g = rng(2);
  for (auto& c : flow_cases(g, 12, 0.2)) {
    const FloatBrackets fb(c.def.algebra);
    const FlowResult fwd = gauge_flow(fb, c.q, c.x, 1.0, 1e-3, 100);
    REQUIRE(fwd.ok);
    for (double m : fwd.mc_residual_norms) CHECK(m <= 1e-8);
    const FlowResult back = gauge_flow(fb, fwd.endpoint, scaled(c.x, -1), 1.0, 1e-3);
    REQUIRE(back.ok);
    CHECK(max_diff(back.endpoint, c.q) <= 1e-6);
  }
}

TEST_CASE("RK4 converges with fourth order") {
  auto g = rng(3);
  std::size_t tested = 0;
  for (auto& c : flow_cases(g, 10, 0.5)) {
    const FloatBrackets fb(c.def.algebra);
    const DVector e1 = gauge_flow(fb, c.q, c.x, 1.0, 0.1).endpoint;
    const DVector e2 = gauge_flow(fb, c.q, c.x, 1.0, 0.05).endpoint;
    const DVector e3 = gauge_flow(fb, c.q, c.x, 1.0, 0.025).endpoint;
    const double d1 = max_diff(e1, e2), d2 = max_diff(e2, e3);
    if (d2 < 1e-12) continue;  // linear along this orbit: RK4 is exact up to round-off
    ++tested;
    CHECK(std::log2(d1 / d2) >= 3.5);
  }
  CHECK(tested > 0);
}

TEST_CASE("non-finite values stop the flow") {
  // μ3(a, c, c) = c gives dq/dt = x q²/2, which blows up at t = 2/(x q).
  GradedVectorSpace space({{"a", -1}, {"c", 0}});
  GradedVector vc;
  vc.add(1, 1);
  const LInftyAlgebra alg(space, 3, {{{0, 1, 1}, vc}});
  const FloatBrackets fb(alg);
  const FlowResult r = gauge_flow(fb, {1.0}, {1000.0}, 1.0, 1e-2);
  CHECK_FALSE(r.ok);
  CHECK(r.last_valid_t < 1.0);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("ev map: value and derivative at zero") {
  auto g = rng(4);
  for (const auto& inst : gauge_instances(g, 8, false)) {
    CAPTURE(inst.name);
    const GaugeSetting s(inst.def.algebra, inst.w);
    const DVector q = s.brackets().to_coords(0, inst.q);
    const std::size_t nv = s.splitting(-1).codim();
    CHECK(max_norm(s.ev_map(q, DVector(nv, 0.0))) < 1e-14);
    const auto d = s.quotient_differential(inst.q, -1);
    const double h = 1e-4;
    for (std::size_t j = 0; j < nv; ++j) {
      DVector vp(nv, 0.0), vm(nv, 0.0);
      vp[j] = h;
      vm[j] = -h;
      const DVector fp = s.ev_map(q, vp), fm = s.ev_map(q, vm);
      for (std::size_t i = 0; i < fp.size(); ++i) CHECK(std::abs((fp[i] - fm[i]) / (2 * h) - d[i][j]) <= 1e-4);
    }
  }
}

TEST_CASE("R map: zero at zero, derivative, and vanishing on ev") {
  auto g = rng(5);
  for (const auto& inst : gauge_instances(g, 8, false)) {
    CAPTURE(inst.name);
    const GaugeSetting s(inst.def.algebra, inst.w);
    const DVector q = s.brackets().to_coords(0, inst.q);
    const std::size_t nv = s.splitting(-1).codim(), ny = s.splitting(0).codim();
    const DVector zero_v(nv, 0.0), zero_y(ny, 0.0);
    CHECK(max_norm(s.r_map(zero_v, q, zero_y)) < 1e-14);
    const auto d = s.quotient_differential(inst.q, 0);
    const double h = 1e-4;
    for (std::size_t j = 0; j < ny; ++j) {
      DVector yp(ny, 0.0), ym(ny, 0.0);
      yp[j] = h;
      ym[j] = -h;
      const DVector fp = s.r_map(zero_v, q, yp), fm = s.r_map(zero_v, q, ym);
      for (std::size_t i = 0; i < fp.size(); ++i) CHECK(std::abs((fp[i] - fm[i]) / (2 * h) - d[i][j]) <= 1e-4);
    }
    // R_{v,Q'}(ev_{Q'}(v)) = 0 for an MC Q' that is a gauge transform of Q.
    const DVector q_prime = s.flow_from(q, random_dvector(g, nv, 0.1)).endpoint;
    for (int trial = 0; trial < 3; ++trial) {
      const DVector v = random_dvector(g, nv, 0.1);
      CHECK(max_norm(s.r_map(v, q_prime, s.ev_map(q_prime, v))) <= 1e-8);
    }
  }
}

TEST_CASE("rectify recovers gauge-flowed elements") {
  auto g = rng(6);
  std::size_t successes = 0, total = 0;
  for (const auto& inst : gauge_instances(g, 6, true)) {
    CAPTURE(inst.name);
    const GaugeSetting s(inst.def.algebra, inst.w);
    const DVector q = s.brackets().to_coords(0, inst.q);
    const std::size_t nv = s.splitting(-1).codim();

    const RectifyResult same = rectify(s, inst.q, q);
    CHECK(same.success);
    CHECK(same.iterations == 0);

    const DVector w = random_dvector(g, nv, 0.05);
    const DVector q_prime = s.flow_from(q, w).endpoint;
    const RectifyResult r = rectify(s, inst.q, q_prime);
    ++total;
    if (r.success) {
      ++successes;
      CHECK(r.ev_residual <= 1e-8);
      CHECK(r.mc_residual <= 1e-8);
      CHECK(r.iterations <= 20);
    } else {
      CHECK_FALSE(r.message.empty());
    }
  }
  CHECK(successes == total);
}

TEST_CASE("rectify refuses when H0 of the quotient is nonzero") {
  // Abelian A: μ1 = 0, so H^0(V/W) = ∧²A* / W^0 ≠ 0 for W = 0.
  DeformationDatum d{BracketTensor(2), BracketTensor(2), ExtElement(2)};
  const DeformationAlgebra def = deformation_algebra(d);
  const GaugeSetting s(def.algebra, GradedSubspace::zero(def.forms.space()));
  const RectifyResult r = rectify(s, GradedVector{}, DVector(1, 0.01));
  CHECK_FALSE(r.success);
  CHECK(r.message.find("H^0") != std::string::npos);
}

TEST_CASE("c-tangent point model: rectify refuses, H0 of the quotient is the bivectors") {
  // At the origin the isotropy of 0 ⊕ B* reduces to 𝔤 = span(e1, e2, e3), abelian, with H = e^123.
  // A = 0 ⊕ 𝔤* has zero bracket, so d_A = 0 and nothing in degree -1 reaches ∧²A*. The anchor
  // derivative that makes the germ stable does not survive the reduction to a point.
  const QuadraticLieAlgebra e = build_twisted_double(lie_algebras::abelian(3), ExtElement::monomial(3, 0b111));
  const DiracSplit split = cotangent_split(e);
  const DeformationAlgebra def = deformation_algebra(split.datum());
  CHECK(check_jacobi(def.algebra, 6).passed());
  const GaugeSetting s(def.algebra, GradedSubspace::zero(def.forms.space()));
  const RectifyResult r = rectify(s, GradedVector{}, DVector(3, 0.01));
  CHECK_FALSE(r.success);
  CHECK(r.iterations == 0);
  CHECK(r.message.find("H^0") != std::string::npos);
}
