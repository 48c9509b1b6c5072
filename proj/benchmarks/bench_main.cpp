#include <benchmark/benchmark.h>

#include "algebroid_instances.hpp"
#include "dirac_instances.hpp"
#include "dirac_stab/algebroid.hpp"
#include "dirac_stab/gauge.hpp"
#include "dirac_stab/stability.hpp"

using namespace dirac_stab;
using namespace test_support;

namespace {

// Deformation algebra of 0 + g* in (g + g*)_H: A* carries the bracket of g and Ψ = H.
DeformationAlgebra double_of(const LieAlgebra& g, const ExtElement& h) {
  return deformation_algebra(cotangent_split(build_twisted_double(g, h)).datum());
}

void BM_CheckJacobi(benchmark::State& state) {
  const LieAlgebra g = state.range(0) == 3 ? lie_algebras::su2()
                       : state.range(0) == 5 ? direct_sum(lie_algebras::su2(), lie_algebras::aff1())
                                             : direct_sum(lie_algebras::su2(), lie_algebras::su2());
  auto rg = rng(1);
  const auto closed = closed_three_forms(g);
  ExtElement h(g.dim());
  for (const auto& c : closed) h += random_rational(rg, 2) * c;
  const DeformationAlgebra def = double_of(g, h);
  for (auto _ : state) benchmark::DoNotOptimize(check_jacobi(def.algebra, 6));
  state.SetLabel("rank " + std::to_string(g.dim()));
}
BENCHMARK(BM_CheckJacobi)->Arg(3)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_DeformationAlgebra(benchmark::State& state) {
  const LieAlgebra g = direct_sum(lie_algebras::su2(), lie_algebras::su2());
  const ExtElement h = cartan_three_form(lie_algebras::su2(), identity_matrix(3));
  ExtElement h6(6);
  for (const auto& [w, c] : h.terms()) h6.add(w, c);
  for (auto _ : state) benchmark::DoNotOptimize(double_of(g, h6));
}
BENCHMARK(BM_DeformationAlgebra)->Unit(benchmark::kMillisecond);

void BM_CECohomology(benchmark::State& state) {
  LieAlgebra g = lie_algebras::su2();
  while (g.dim() < static_cast<std::size_t>(state.range(0))) g = direct_sum(g, lie_algebras::aff1());
  for (auto _ : state) {
    const ChainComplex c = g.ce_complex();
    std::size_t total = 0;
    for (int k = 0; k <= static_cast<int>(g.dim()); ++k) total += c.cohomology(k).dim;
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_CECohomology)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_Obstruction(benchmark::State& state) {
  const LieAlgebra g = direct_sum(direct_sum(lie_algebras::su2(), lie_algebras::sl2()), lie_algebras::aff1());
  std::vector<RVector> h;
  for (std::size_t i = 0; i < 6; ++i) {
    RVector v(8);
    v[i] = 1;
    h.push_back(v);
  }
  const FixedPointGerm germ = germ_with_ideal(g, Subspace(8, h));
  for (auto _ : state) benchmark::DoNotOptimize(obstruction(germ));
}
BENCHMARK(BM_Obstruction)->Unit(benchmark::kMillisecond);

void BM_CTangentVerdict(benchmark::State& state) {
  const PolyLieAlgebroid b = PolyLieAlgebroid::c_tangent();
  const PolySection pi = ctangent_pi(), h = ctangent_h();
  for (auto _ : state) benchmark::DoNotOptimize(stability_verdict(b, pi, h, origin(4), 20240611));
}
BENCHMARK(BM_CTangentVerdict)->Unit(benchmark::kMillisecond);

void BM_TwistedPoissonResidual(benchmark::State& state) {
  const LieAlgebra g = lie_algebras::sl2();
  const PolyLieAlgebroid b = PolyLieAlgebroid::tangent(3);
  const PolySection pi = lie_poisson(g);
  const PolySection h(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(twisted_poisson_residual(b, pi, h));
}
BENCHMARK(BM_TwistedPoissonResidual)->Unit(benchmark::kMicrosecond);

void BM_GaugeFlow(benchmark::State& state) {
  const DeformationAlgebra def = double_of(lie_algebras::su2(), cartan_three_form(lie_algebras::su2(), identity_matrix(3)));
  const FloatBrackets fb(def.algebra);
  const DVector q(fb.dim(0), 0.0);
  DVector x(fb.dim(-1), 0.05);
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauge_flow(fb, q, x, 1.0, step, state.range(0)));
  state.SetLabel("steps " + std::to_string(state.range(0)));
}
BENCHMARK(BM_GaugeFlow)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Rectify(benchmark::State& state) {
  auto g = rng(2);
  const auto instances = gauge_instances(g, 1, true);
  const auto& inst = instances.front();
  const GaugeSetting s(inst.def.algebra, inst.w);
  const DVector q = s.brackets().to_coords(0, inst.q);
  const DVector q_prime = s.flow_from(q, DVector(s.splitting(-1).codim(), 0.03)).endpoint;
  for (auto _ : state) benchmark::DoNotOptimize(rectify(s, inst.q, q_prime));
}
BENCHMARK(BM_Rectify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
