#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dirac_stab/gauge.hpp"

namespace dirac_stab::cli {

namespace {

using dirac_stab::to_string;

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, const std::string& what) {
  const auto it = m.find(name);
  if (it == m.end()) {
    std::string known;
    for (const auto& [k, v] : m) known += (known.empty() ? "" : ", ") + k;
    throw InputError("no " + what + " named \"" + name + "\"" + (known.empty() ? "" : " (have: " + known + ")"));
  }
  return it->second;
}

[[noreturn]] void unsupported(const Options& opt, Kind k) {
  throw InputError("command '" + opt.command + "' does not apply to kind " + to_string(k));
}

std::string vector_string(const GradedVectorSpace& space, const GradedVector& v) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto& [i, c] : v.terms()) s += (s.empty() ? "" : ", ") + space.label(i) + ": " + to_string(c);
  return s;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string dvector_string(const DVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + "]";
}

bool wanted(const Options& opt, int degree) { return !opt.degree || *opt.degree == degree; }

Table complex_table(const Options& opt, const ChainComplex& c, const std::string& title) {
  Table t{title, {"degree", "dim", "rank d", "dim H"}, {}};
  for (int k = c.lowest_degree(); k <= c.highest_degree(); ++k)
    if (wanted(opt, k))
      t.rows.push_back({std::to_string(k), std::to_string(c.dim(k)), std::to_string(c.rank_of(k)),
                        std::to_string(c.cohomology(k).dim)});
  return t;
}

// An L∞[1]-algebra with named elements and subalgebras, from either a linfty document or
// the deformation algebra of a Dirac split.
struct AlgebraContext {
  LInftyAlgebra algebra;
  std::map<std::string, GradedVector> elements;
  std::map<std::string, GradedSubspace> subalgebras;
};

/// ∧•𝔥° inside the forms on A.
GradedSubspace annihilator_forms(const FormSpace& forms, const Subspace& h) {
  const std::size_t n = forms.rank();
  RMatrix m(h.dim(), n);
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = h.basis()[i][j];
  const Subspace ann = h.dim() == 0 ? Subspace::whole(n) : Subspace(n, kernel_basis(m));
  std::vector<GradedVector> span;
  const auto powers = exterior_powers(ann);
  for (std::size_t k = 0; k < powers.size(); ++k)
    for (const auto& v : powers[k].basis()) span.push_back(forms.to_vector(from_coordinates(n, k, v)));
  return GradedSubspace(forms.space(), span);
}

DiracSplit make_split(const SplitDoc& s) {
  const Subspace k = s.complement ? *s.complement : lagrangian_complement(s.ambient, s.dirac);
  return DiracSplit(s.ambient, s.dirac, k);
}

AlgebraContext context_of(const Document& doc, const DiracSplit* split) {
  if (doc.linfty) return {doc.linfty->algebra, doc.linfty->elements, doc.linfty->subalgebras};
  DeformationAlgebra def = deformation_algebra(split->datum());
  AlgebraContext c{def.algebra, {}, {}};
  for (const auto& [name, f] : doc.split->forms) c.elements[name] = def.forms.to_vector(f);
  for (const auto& [name, h] : doc.split->ideals) c.subalgebras[name] = annihilator_forms(def.forms, h);
  return c;
}

std::optional<int> degree_of(const AlgebraContext& c, const GradedVector& v) {
  return homogeneous_degree(v, c.algebra.space());
}

GradedVector named_element(const AlgebraContext& c, const std::string& name, int degree, const std::string& flag) {
  if (name.empty()) return {};
  const GradedVector v = lookup(c.elements, name, "element");
  const auto d = degree_of(c, v);
  if (!v.is_zero() && d != degree)
    throw InputError(flag + " " + name + ": expected an element of degree " + std::to_string(degree));
  return v;
}

// Refuses non-MC elements with the residual in the report.
bool require_mc(Report& r, const AlgebraContext& c, const GradedVector& q, const std::string& label) {
  const GradedVector res = mc_residual(c.algebra, q);
  r.check("Maurer-Cartan " + label, res.is_zero(), res.is_zero() ? "" : "residual " + vector_string(c.algebra.space(), res));
  if (!res.is_zero()) r.exit_code = kExitFailed;
  return res.is_zero();
}

void cohomology_of_context(const Options& opt, Report& r, const AlgebraContext& c) {
  const GradedVector q = named_element(c, opt.mc, 0, "--mc");
  if (!require_mc(r, c, q, opt.mc.empty() ? "0" : opt.mc)) return;
  if (opt.subalgebra.empty()) {
    const ChainComplex cx = differential_complex(twist(c.algebra, q));
    r.tables.push_back(complex_table(opt, cx, "cohomology of (V, mu1^Q)"));
    return;
  }
  const GradedSubspace& w = lookup(c.subalgebras, opt.subalgebra, "subalgebra");
  const SubalgebraCheck sc = is_subalgebra(c.algebra, w);
  r.check("subalgebra " + opt.subalgebra, sc.is_subalgebra);
  if (!sc.is_subalgebra) {
    r.exit_code = kExitFailed;
    return;
  }
  const bool in_w = w.contains(q);
  r.check("Q lies in W^0", in_w);
  if (!in_w) {
    r.exit_code = kExitFailed;
    return;
  }
  const ChainComplex cx = quotient_complex(c.algebra, w, q);
  r.tables.push_back(complex_table(opt, cx, "cohomology of (V/W, mu1^Q)"));
}

void flow_of_context(const Options& opt, Report& r, const AlgebraContext& c, double tol) {
  if (opt.xi.empty()) throw InputError("flow needs --xi");
  const GradedVector q = named_element(c, opt.mc, 0, "--mc");
  const GradedVector x = named_element(c, opt.xi, -1, "--xi");
  const bool mc = mc_residual(c.algebra, q).is_zero();
  const std::size_t every = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.1 / opt.step)));
  const FlowResult f = gauge_flow(c.algebra, q, x, opt.t, opt.step, every);
  r.check("flow completed", f.ok, f.ok ? "" : f.message);
  Table t{"gauge flow", {"t", "max |MC residual|"}, {}};
  double worst = 0;
  for (std::size_t i = 0; i < f.times.size(); ++i) {
    t.rows.push_back({format_double(f.times[i]), format_double(f.mc_residual_norms[i])});
    worst = std::max(worst, f.mc_residual_norms[i]);
  }
  r.tables.push_back(std::move(t));
  if (mc) r.check("flow stays Maurer-Cartan", worst <= tol, "max residual " + format_double(worst));
  else r.notes.push_back("start element is not Maurer-Cartan; residual not checked");
  const FloatBrackets fb(c.algebra);
  std::string endpoint;
  for (std::size_t i = 0; i < f.endpoint.size(); ++i)
    endpoint += (i ? ", " : "") + c.algebra.space().label(fb.indices(0)[i]) + ": " + format_double(f.endpoint[i]);
  r.result("endpoint", endpoint.empty() ? "(V^0 = 0)" : endpoint);
}

void rectify_of_context(const Options& opt, Report& r, const AlgebraContext& c, double tol) {
  if (opt.subalgebra.empty()) throw InputError("rectify needs --subalgebra");
  if (opt.qprime.empty() == opt.xi.empty()) throw InputError("rectify needs exactly one of --qprime and --xi");
  const GradedSubspace& w = lookup(c.subalgebras, opt.subalgebra, "subalgebra");
  const GradedVector q = named_element(c, opt.q, 0, "--q");
  if (!require_mc(r, c, q, opt.q.empty() ? "Q = 0" : opt.q)) return;
  const bool in_w = w.contains(q);
  r.check("Q lies in W^0", in_w);
  if (!in_w) {
    r.exit_code = kExitFailed;
    return;
  }
  const GaugeSetting setting(c.algebra, w, opt.step);
  DVector q_prime;
  if (!opt.qprime.empty()) {
    q_prime = setting.brackets().to_coords(0, named_element(c, opt.qprime, 0, "--qprime"));
  } else {
    const GradedVector x = named_element(c, opt.xi, -1, "--xi");
    const FlowResult f = gauge_flow(setting.brackets(), setting.brackets().to_coords(0, q),
                                    setting.brackets().to_coords(-1, x), 1.0, opt.step, 1000000);
    if (!f.ok) throw InputError("flowing Q out along --xi failed: " + f.message);
    q_prime = f.endpoint;
    r.notes.push_back("Q' is the time-1 gauge flow of Q along " + opt.xi);
  }
  RectifyOptions ro;
  ro.tol = tol;
  const RectifyResult res = rectify(setting, q, q_prime, ro);
  r.check("rectify", res.success, res.message);
  if (!res.success && res.iterations == 0) return;
  r.result("iterations", std::to_string(res.iterations));
  r.result("ev residual", format_double(res.ev_residual));
  r.result("MC residual", format_double(res.mc_residual));
  r.result("v", dvector_string(res.v));
  r.result("rectified", dvector_string(res.endpoint));
  Table t{"Newton trace", {"iteration", "ev residual"}, {}};
  for (std::size_t i = 0; i < res.trace.size(); ++i) t.rows.push_back({std::to_string(i), format_double(res.trace[i])});
  r.tables.push_back(std::move(t));
}

std::string witness_of(const JacobiReport& j, const GradedVectorSpace& space) {
  if (j.passed())
    return "n <= " + std::to_string(j.n_max) + ", " + std::to_string(j.words_evaluated) + " words with a nonzero term";
  const auto& f = j.failures.front();
  return std::to_string(j.failures.size()) + " failures, first at n = " + std::to_string(f.n) + " on " +
         f.word.to_string(space);
}

// ---- verify ---------------------------------------------------------------------------

void verify_linfty(Report& r, const LinftyDoc& d) {
  const JacobiReport j = check_jacobi(d.algebra);
  r.check("higher Jacobi identities", j.passed(), witness_of(j, d.algebra.space()));
  for (const auto& [name, w] : d.subalgebras) {
    const SubalgebraCheck sc = is_subalgebra(d.algebra, w);
    r.check("subalgebra " + name, sc.is_subalgebra,
            sc.is_subalgebra ? "" : "bracket leaves W: " + vector_string(d.algebra.space(), sc.counterexample_value));
  }
  Table t{"elements", {"name", "degree", "Maurer-Cartan"}, {}};
  for (const auto& [name, v] : d.elements) {
    const auto deg = homogeneous_degree(v, d.algebra.space());
    t.rows.push_back({name, deg ? std::to_string(*deg) : "-",
                      deg == 0 || v.is_zero() ? (mc_residual(d.algebra, v).is_zero() ? "yes" : "no") : "-"});
  }
  if (!t.rows.empty()) r.tables.push_back(std::move(t));
}

void verify_courant(Report& r, const QuadraticLieAlgebra& e) {
  const CourantReport c = check_courant_axioms(e);
  std::string detail = c.nondegenerate ? "" : "pairing is degenerate";
  if (!c.failures.empty()) detail += (detail.empty() ? "" : "; ") + c.failures.front();
  r.check("Courant axioms", c.passed(), detail);
}

void verify_quadratic(Report& r, const QuadraticDoc& d) {
  verify_courant(r, d.algebra);
  for (const auto& [name, a] : d.subspaces) {
    if (2 * a.dim() != d.algebra.dim()) {
      r.check("Dirac " + name, false, "dimension " + std::to_string(a.dim()) + " is not half the ambient dimension");
      continue;
    }
    const DiracCheck dc = is_dirac(d.algebra, a);
    r.check("Dirac " + name, dc.is_dirac(), dc.lagrangian ? dc.witness : "not lagrangian");
  }
}

void verify_split(Report& r, const SplitDoc& s) {
  verify_courant(r, s.ambient);
  const DiracCheck dc = is_dirac(s.ambient, s.dirac);
  r.check("A is Dirac", dc.is_dirac(), dc.lagrangian ? dc.witness : "not lagrangian");
  if (!dc.is_dirac()) return;
  DiracSplit split;
  try {
    split = make_split(s);
    r.check("complement K is lagrangian and transverse", true);
  } catch (const Error& e) {
    r.check("complement K is lagrangian and transverse", false, e.what());
    return;
  }
  const DeformationAlgebra def = deformation_algebra(split.datum());
  const JacobiReport j = check_jacobi(def.algebra, 6);
  r.check("deformation algebra higher Jacobi", j.passed(), witness_of(j, def.algebra.space()));
  Table t{"forms", {"name", "degree", "Maurer-Cartan", "graph Dirac"}, {}};
  for (const auto& [name, f] : s.forms) {
    const int deg = f.is_zero() ? 2 : f.degree();
    if (deg != 2) {
      t.rows.push_back({name, deg < 0 ? "mixed" : std::to_string(deg), "-", "-"});
      continue;
    }
    const bool mc = mc_residual(def.algebra, def.forms.to_vector(f)).is_zero();
    const bool dirac = is_dirac(s.ambient, split.graph(f)).is_dirac();
    t.rows.push_back({name, "2", mc ? "yes" : "no", dirac ? "yes" : "no"});
    r.check("MC iff Dirac for " + name, mc == dirac);
  }
  if (!t.rows.empty()) r.tables.push_back(std::move(t));
  const LieAlgebra* ga = nullptr;
  std::optional<LieAlgebra> a_alg;
  try {
    a_alg.emplace(split.datum().a_bracket);
    ga = &*a_alg;
  } catch (const Error&) {
  }
  for (const auto& [name, h] : s.ideals) {
    const bool ideal = ga && ga->is_ideal(h);
    r.check("ideal " + name, ideal);
    if (ideal) r.check("subalgebra W of " + name, is_subalgebra(def.algebra, annihilator_forms(def.forms, h)).is_subalgebra);
  }
}

void verify_algebroid(Report& r, const AlgebroidDoc& a, const std::optional<std::vector<Rational>>& point) {
  const AlgebroidReport ar = check_algebroid(a.algebroid);
  r.check("Lie algebroid axioms", ar.passed(), ar.passed() ? "" : ar.failures.front());
  if (!ar.passed()) return;
  const PolySection dh = d_B(a.algebroid, a.h);
  r.check("d_B H = 0", dh.is_zero(), dh.is_zero() ? "" : dh.to_string("e^"));
  if (!dh.is_zero()) return;
  const PolySection res = twisted_poisson_residual(a.algebroid, a.pi, a.h);
  r.check("[pi,pi] + 2 (wedge^3 pi#) H = 0", res.is_zero(), res.is_zero() ? "" : res.to_string());
  if (point) {
    const bool fixed = is_fixed_point(a.algebroid, a.pi, *point);
    r.check("fixed point", fixed, fixed ? "" : "rho_p o pi#_p != 0");
  }
}

void verify_germ(Report& r, const FixedPointGerm& g) {
  r.check("germ data", true, "A lagrangian, A in ker rho");
  try {
    const Subspace h = ideal_h(g);
    r.check("h = (ker rho)^perp is an ideal", true, "dim h = " + std::to_string(h.dim()));
  } catch (const Error& e) {
    r.check("h = (ker rho)^perp is an ideal", false, e.what());
    return;
  }
  const LesCheck les = les_consistency(g);
  r.check("long exact sequence implication", les.consistent,
          "H2(g) = " + std::to_string(les.h2_g) + ", H3(g/h) = " + std::to_string(les.h3_quotient) +
              ", obstruction = " + std::to_string(les.obstruction_dim));
}

void verify_cartan(Report& r, const CartanDiracDoc& c) {
  FixedPointGerm germ;
  try {
    germ = cartan_dirac_germ(c.g, c.metric);
    r.check("metric symmetric, nondegenerate, invariant", true);
  } catch (const Error& e) {
    r.check("metric symmetric, nondegenerate, invariant", false, e.what());
    return;
  }
  const std::size_t n = c.g.dim();
  const QuadraticLieAlgebra e = build_twisted_double(c.g, cartan_three_form(c.g, c.metric));
  verify_courant(r, e);
  std::vector<RVector> cotangent;
  for (std::size_t i = 0; i < n; ++i) {
    RVector v(2 * n);
    v[n + i] = 1;
    cotangent.push_back(v);
  }
  const DiracCheck dc = is_dirac(e, Subspace(2 * n, cotangent));
  r.check("0 + g* is Dirac in the Cartan-twisted double", dc.is_dirac(), dc.witness);
  const bool whole = ideal_h(germ) == Subspace::whole(n);
  r.check("h = g at the unit", whole);
}

// ---- cohomology / stability for Lie-algebra-level germs --------------------------------

FixedPointGerm germ_of(const Document& doc) {
  if (doc.germ) return *doc.germ;
  try {
    return cartan_dirac_germ(doc.cartan->g, doc.cartan->metric);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

void cohomology_of_germ(const Options& opt, Report& r, const FixedPointGerm& germ) {
  const Subspace h = ideal_h(germ);
  const LieAlgebra& g = germ.lie_algebra();
  const ChainComplex ce = g.ce_complex();
  const ChainComplex q = quotient_complex(ce, annihilator_subcomplex(g.dim(), h));
  Table t{"obstruction complex and CE cohomology", {"degree", "dim quotient", "dim H quotient", "dim H(g)"}, {}};
  for (int k = 0; k <= static_cast<int>(g.dim()); ++k)
    if (wanted(opt, k))
      t.rows.push_back({std::to_string(k), std::to_string(q.dim(k)), std::to_string(q.cohomology(k).dim),
                        std::to_string(ce.cohomology(k).dim)});
  r.result("dim g", std::to_string(g.dim()));
  r.result("dim h", std::to_string(h.dim()));
  r.tables.push_back(std::move(t));
}

void report_stability(const Options& opt, Report& r, const StabilityReport& s) {
  r.result("verdict", to_string(s.verdict));
  if (s.verdict != Verdict::NotFixedPoint) {
    r.result("dim H2", std::to_string(s.h2_dim));
    r.result("family dim", std::to_string(s.family_dim));
    r.result("complex dims (0..3)", join(s.complex_dims));
  }
  for (const auto& d : s.diagnostics) r.notes.push_back(d);
  if (s.verdict == Verdict::NotFixedPoint || (opt.require_stable && s.verdict != Verdict::Stable))
    r.exit_code = kExitFailed;
}

std::vector<Rational> point_of(const Options& opt, const AlgebroidDoc& a) {
  std::vector<Rational> p;
  if (opt.point) {
    p = parse_point(*opt.point);
  } else if (a.point) {
    p = *a.point;
  } else {
    throw InputError("no point: pass --point or set \"point\" in the document");
  }
  if (p.size() != a.algebroid.nvars())
    throw InputError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                     std::to_string(a.algebroid.nvars()));
  return p;
}

std::string point_string(const std::vector<Rational>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

}  // namespace

Report run_command(const Options& opt, const Document& doc) {
  Report r;
  r.command = opt.command;
  r.kind = to_string(doc.kind);
  r.name = doc.name;
  r.seed = opt.seed;
  const std::string& cmd = opt.command;

  if (cmd == "verify") {
    switch (doc.kind) {
      case Kind::Linfty: verify_linfty(r, *doc.linfty); break;
      case Kind::QuadraticLie: verify_quadratic(r, *doc.quadratic); break;
      case Kind::DiracSplit: verify_split(r, *doc.split); break;
      case Kind::PolyAlgebroid: {
        std::optional<std::vector<Rational>> p = doc.algebroid->point;
        if (opt.point) p = point_of(opt, *doc.algebroid);
        if (p) r.result("point", point_string(*p));
        verify_algebroid(r, *doc.algebroid, p);
        break;
      }
      case Kind::Germ: verify_germ(r, *doc.germ); break;
      case Kind::CartanDirac: verify_cartan(r, *doc.cartan); break;
    }
    if (!r.all_passed()) r.exit_code = kExitFailed;
    return r;
  }

  if (cmd == "cohomology") {
    switch (doc.kind) {
      case Kind::Linfty: cohomology_of_context(opt, r, context_of(doc, nullptr)); break;
      case Kind::DiracSplit: {
        const DiracSplit split = [&] {
          try {
            return make_split(*doc.split);
          } catch (const Error& e) {
            throw InputError(e.what());
          }
        }();
        cohomology_of_context(opt, r, context_of(doc, &split));
        break;
      }
      case Kind::PolyAlgebroid: {
        const auto p = point_of(opt, *doc.algebroid);
        r.result("point", point_string(p));
        try {
          const GermComplex gc = germ_complex(doc.algebroid->algebroid, doc.algebroid->pi, doc.algebroid->h, p, opt.seed);
          r.result("dim ker rho_p", std::to_string(gc.anchor_kernel.dim()));
          r.result("extension perturbations", std::to_string(gc.perturbations_checked) + " (differential unchanged)");
          r.tables.push_back(complex_table(opt, gc.quotient, "germ complex wedge^k B_p / wedge^k ker rho_p"));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          r.check("germ complex", false, e.what());
          r.exit_code = kExitFailed;
        }
        break;
      }
      case Kind::Germ:
      case Kind::CartanDirac: cohomology_of_germ(opt, r, germ_of(doc)); break;
      case Kind::QuadraticLie: unsupported(opt, doc.kind);
    }
    return r;
  }

  if (cmd == "stability") {
    switch (doc.kind) {
      case Kind::PolyAlgebroid: {
        const auto p = point_of(opt, *doc.algebroid);
        r.result("point", point_string(p));
        try {
          report_stability(opt, r,
                           stability_verdict(doc.algebroid->algebroid, doc.algebroid->pi, doc.algebroid->h, p, opt.seed));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          r.check("germ complex", false, e.what());
          r.exit_code = kExitFailed;
        }
        break;
      }
      case Kind::Germ:
      case Kind::CartanDirac: report_stability(opt, r, obstruction(germ_of(doc))); break;
      default: unsupported(opt, doc.kind);
    }
    return r;
  }

  if (cmd == "flow" || cmd == "rectify") {
    std::optional<DiracSplit> split;
    if (doc.kind == Kind::DiracSplit) {
      try {
        split = make_split(*doc.split);
      } catch (const Error& e) {
        throw InputError(e.what());
      }
    } else if (doc.kind != Kind::Linfty) {
      unsupported(opt, doc.kind);
    }
    AlgebraContext c = context_of(doc, split ? &*split : nullptr);
    if (cmd == "rectify") {
      rectify_of_context(opt, r, c, opt.tol.value_or(1e-8));
    } else if (split) {
      // Compare the gauge equation of ξ with transport by e^{t ad_ξ}.
      if (opt.xi.empty()) throw InputError("flow needs --xi");
      const ExtElement eps = opt.mc.empty() ? ExtElement(split->rank()) : lookup(doc.split->forms, opt.mc, "form");
      const ExtElement xi = lookup(doc.split->forms, opt.xi, "form");
      if (!eps.is_zero() && eps.degree() != 2) throw InputError("--mc " + opt.mc + ": expected a 2-form");
      if (xi.degree() != 1 && !xi.is_zero()) throw InputError("--xi " + opt.xi + ": expected a 1-form");
      const double tol = opt.tol.value_or(1e-6);
      const AutomorphismCheck ac = verify_prop_CAauto(*split, eps, xi, opt.t, opt.step, 10);
      Table t{"gauge flow vs exp(t ad_xi) transport", {"t", "max deviation"}, {}};
      for (std::size_t i = 0; i < ac.sample_times.size(); ++i)
        t.rows.push_back({format_double(ac.sample_times[i]), format_double(ac.deviations[i])});
      r.tables.push_back(std::move(t));
      r.check("flow completed", ac.flow_ok);
      r.check("graph stays transverse to K", ac.transversal,
              ac.transversal ? "" : "lost at t = " + format_double(ac.first_bad_t));
      r.check("deviation within tolerance", ac.max_deviation <= tol,
              format_double(ac.max_deviation) + " <= " + format_double(tol));
      r.result("max deviation", format_double(ac.max_deviation));
      // Endpoint of the gauge equation of ξ, i.e. the flow generated by -ξ.
      const DeformationAlgebra def = deformation_algebra(split->datum());
      const FlowResult f = gauge_flow(def.algebra, def.forms.to_vector(eps), def.forms.to_vector(-xi), opt.t, opt.step,
                                      static_cast<std::size_t>(-1));
      if (f.ok) {
        const FloatBrackets fb(def.algebra);
        std::string endpoint;
        for (std::size_t i = 0; i < f.endpoint.size(); ++i)
          endpoint += (i ? ", " : "") + def.algebra.space().label(fb.indices(0)[i]) + ": " + format_double(f.endpoint[i]);
        r.result("endpoint", endpoint);
      }
    } else {
      flow_of_context(opt, r, c, opt.tol.value_or(1e-6));
    }
    if (!r.all_passed()) r.exit_code = kExitFailed;
    return r;
  }

  throw InputError("unknown command '" + cmd + "'");
}

}  // namespace dirac_stab::cli
