#include "dirac_stab/algebroid.hpp"

#include "dirac_stab/courant.hpp"

#include <random>

namespace dirac_stab {

// PolySection

PolySection PolySection::function(std::size_t rank, const Polynomial& f) {
  return monomial(rank, 0, f);
}

PolySection PolySection::monomial(std::size_t rank, ExtWord w, const Polynomial& c) {
  PolySection s(rank, c.nvars());
  s.add(w, c);
  return s;
}

PolySection PolySection::generator(std::size_t rank, std::size_t nvars, std::size_t i) {
  if (i >= rank) throw Error("PolySection::generator: index out of range");
  return monomial(rank, ExtWord{1} << i, Polynomial::constant(nvars, 1));
}

PolySection PolySection::constant(const ExtElement& e, std::size_t nvars) {
  PolySection s(e.space_dim(), nvars);
  for (const auto& [w, c] : e.terms()) s.add(w, Polynomial::constant(nvars, c));
  return s;
}

Polynomial PolySection::coefficient(ExtWord w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Polynomial(nvars_) : it->second;
}

void PolySection::add(ExtWord w, const Polynomial& c) {
  if (c.nvars() != nvars_) throw Error("PolySection: coefficient has the wrong number of variables");
  if (rank_ < 32 && (w >> rank_) != 0) throw Error("PolySection: word exceeds the rank");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int PolySection::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) {
    if (d >= 0 && word_degree(w) != d) return -1;
    d = word_degree(w);
  }
  return d;
}

PolySection PolySection::part(int degree) const {
  PolySection s(rank_, nvars_);
  for (const auto& [w, c] : terms_)
    if (word_degree(w) == degree) s.terms_.emplace(w, c);
  return s;
}

int PolySection::coefficient_degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, c.degree());
  return d;
}

ExtElement PolySection::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != nvars_) throw Error("PolySection::evaluate: point has the wrong dimension");
  ExtElement e(rank_);
  for (const auto& [w, c] : terms_) e.add(w, c.evaluate(point));
  return e;
}

std::string PolySection::to_string(const std::string& symbol) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")";
    if (w == 0) continue;
    s += "*";
    bool first = true;
    for (auto i : word_indices(w)) {
      if (!first) s += "^";
      s += symbol + std::to_string(i + 1);
      first = false;
    }
  }
  return s;
}

void PolySection::check_shape(const PolySection& o) const {
  if (rank_ != o.rank_ || nvars_ != o.nvars_) throw Error("PolySection: rank or variable count mismatch");
}

PolySection& PolySection::operator+=(const PolySection& o) {
  check_shape(o);
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

PolySection& PolySection::operator-=(const PolySection& o) {
  check_shape(o);
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

PolySection& PolySection::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, p] : terms_) p *= c;
  return *this;
}

PolySection operator*(const Polynomial& f, const PolySection& a) {
  if (f.nvars() != a.nvars_) throw Error("PolySection: rank or variable count mismatch");
  PolySection out(a.rank_, a.nvars_);
  for (const auto& [w, c] : a.terms_) out.add(w, f * c);
  return out;
}

PolySection wedge(const PolySection& a, const PolySection& b) {
  if (a.rank() != b.rank() || a.nvars() != b.nvars()) throw Error("wedge: rank or variable count mismatch");
  PolySection out(a.rank(), a.nvars());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      const int s = wedge_sign(wa, wb);
      if (s == 0) continue;
      out.add(wa | wb, Rational(s) * (ca * cb));
    }
  }
  return out;
}

PolySection contract(const PolySection& x, const PolySection& alpha) {
  if (x.rank() != alpha.rank() || x.nvars() != alpha.nvars()) throw Error("contract: rank or variable count mismatch");
  if (!x.is_zero() && x.degree() != 1) throw Error("contract: first argument must have degree 1");
  PolySection out(alpha.rank(), alpha.nvars());
  for (const auto& [wx, f] : x.terms()) {
    const std::size_t i = word_indices(wx).front();
    for (const auto& [wa, g] : alpha.terms()) {
      if (!((wa >> i) & 1)) continue;
      const ExtElement c = contract_basis(i, ExtElement::monomial(alpha.rank(), wa));
      for (const auto& [w, s] : c.terms()) out.add(w, s * (f * g));
    }
  }
  return out;
}

// PolyLieAlgebroid

PolyLieAlgebroid::PolyLieAlgebroid(std::size_t nvars, std::vector<VectorField> anchor,
                                   const std::vector<PolyStructureConstant>& constants, int degree_cap)
    : nvars_(nvars), rank_(anchor.size()), cap_(degree_cap), anchor_(std::move(anchor)) {
  if (cap_ < 0) throw Error("PolyLieAlgebroid: degree cap must be nonnegative");
  if (rank_ > 16) throw Error("PolyLieAlgebroid: rank above 16 is not supported");
  for (const auto& v : anchor_) {
    if (v.size() != nvars_) throw Error("PolyLieAlgebroid: anchor field has the wrong number of components");
    for (const auto& p : v) {
      if (p.nvars() != nvars_) throw Error("PolyLieAlgebroid: anchor coefficient has the wrong number of variables");
      if (p.degree() > cap_) throw Error("PolyLieAlgebroid: anchor coefficient exceeds the degree cap");
    }
  }
  c_.assign(rank_ * rank_ * rank_, Polynomial(nvars_));
  std::vector<bool> seen(c_.size(), false);
  for (const auto& sc : constants) {
    if (sc.i >= rank_ || sc.j >= rank_ || sc.k >= rank_) throw Error("PolyLieAlgebroid: structure constant index out of range");
    if (sc.i == sc.j) throw Error("PolyLieAlgebroid: structure constant with i = j");
    if (sc.value.nvars() != nvars_) throw Error("PolyLieAlgebroid: structure constant has the wrong number of variables");
    if (sc.value.degree() > cap_) throw Error("PolyLieAlgebroid: structure constant exceeds the degree cap");
    const std::size_t a = (sc.i * rank_ + sc.j) * rank_ + sc.k, b = (sc.j * rank_ + sc.i) * rank_ + sc.k;
    if (seen[a] && !(c_[a] == sc.value)) throw Error("PolyLieAlgebroid: conflicting structure constants");
    seen[a] = seen[b] = true;
    c_[a] = sc.value;
    c_[b] = -sc.value;
  }
}

PolyLieAlgebroid PolyLieAlgebroid::tangent(std::size_t m) {
  std::vector<VectorField> anchor(m, VectorField(m, Polynomial(m)));
  for (std::size_t i = 0; i < m; ++i) anchor[i][i] = Polynomial::constant(m, 1);
  return PolyLieAlgebroid(m, std::move(anchor), {});
}

PolyLieAlgebroid PolyLieAlgebroid::c_tangent(std::size_t extra_params) {
  const std::size_t m = 4 + extra_params;
  std::vector<VectorField> anchor(4, VectorField(m, Polynomial(m)));
  for (std::size_t i = 0; i < 3; ++i) anchor[i][i] = Polynomial::variable(m, i);
  anchor[3][3] = Polynomial::constant(m, 1);
  return PolyLieAlgebroid(m, std::move(anchor), {});
}

PolyLieAlgebroid PolyLieAlgebroid::action(const BracketTensor& c) {
  const std::size_t n = c.dim();
  std::vector<VectorField> anchor(n, VectorField(n, Polynomial(n)));
  std::vector<PolyStructureConstant> constants;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (sgn(c.at(i, j, k)) == 0) continue;
        anchor[i][k] -= c.at(i, j, k) * Polynomial::variable(n, j);
        if (i < j) constants.push_back({i, j, k, Polynomial::constant(n, c.at(i, j, k))});
      }
    }
  }
  PolyLieAlgebroid b(n, std::move(anchor), constants);
  // Keep the tensor as given, including a broken antisymmetry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) b.c_[(i * n + j) * n + k] = Polynomial::constant(n, c.at(i, j, k));
  return b;
}

const Polynomial& PolyLieAlgebroid::constant(std::size_t i, std::size_t j, std::size_t k) const {
  if (i >= rank_ || j >= rank_ || k >= rank_) throw Error("PolyLieAlgebroid::constant: index out of range");
  return c_[(i * rank_ + j) * rank_ + k];
}

Polynomial PolyLieAlgebroid::anchor_apply(std::size_t i, const Polynomial& f) const {
  return apply(anchor_.at(i), f);
}

PolySection PolyLieAlgebroid::frame_bracket(std::size_t i, std::size_t j) const {
  PolySection s(rank_, nvars_);
  for (std::size_t k = 0; k < rank_; ++k) s.add(ExtWord{1} << k, constant(i, j, k));
  return s;
}

RMatrix PolyLieAlgebroid::anchor_at(const std::vector<Rational>& p) const {
  if (p.size() != nvars_) throw Error("anchor_at: point has the wrong dimension");
  RMatrix m(nvars_, rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t a = 0; a < nvars_; ++a) m(a, i) = anchor_[i][a].evaluate(p);
  return m;
}

void PolyLieAlgebroid::enforce(const PolySection& s, const std::string& what) const {
  if (s.rank() != rank_ || s.nvars() != nvars_)
    throw Error(what + ": section does not match the algebroid (rank " + std::to_string(s.rank()) + ", " +
                std::to_string(s.nvars()) + " variables)");
  if (s.coefficient_degree() > cap_)
    throw Error(what + ": coefficient degree " + std::to_string(s.coefficient_degree()) + " exceeds the cap " +
                std::to_string(cap_));
}

namespace {

std::string frame_name(std::size_t i) { return "e" + std::to_string(i + 1); }

PolySection word_section(const PolyLieAlgebroid& b, ExtWord w) {
  return PolySection::monomial(b.rank(), w, Polynomial::constant(b.nvars(), 1));
}

// [e_J, f] for a nonempty word J:
// [Y1∧Y', f] = Y1∧[Y',f] + (-1)^{|J|-1} (ρ(Y1)f) Y', [e_j, f] = ρ(e_j)f.
PolySection word_with_function(const PolyLieAlgebroid& b, ExtWord w, const Polynomial& f) {
  const auto idx = word_indices(w);
  const std::size_t first = idx.front();
  const ExtWord rest = w & ~(ExtWord{1} << first);
  const Polynomial rf = b.anchor_apply(first, f);
  if (rest == 0) return PolySection::function(b.rank(), rf);
  PolySection out = wedge(word_section(b, ExtWord{1} << first), word_with_function(b, rest, f));
  PolySection tail = rf * word_section(b, rest);
  if ((idx.size() - 1) % 2 == 1) tail *= Rational(-1);
  return out += tail;
}

// [f, Q] for a function f: [f, gY] = -(-1)^{q-1} g [Y, f].
PolySection function_with(const PolyLieAlgebroid& b, const Polynomial& f, const PolySection& q) {
  PolySection out(b.rank(), b.nvars());
  for (const auto& [w, g] : q.terms()) {
    if (w == 0) continue;
    PolySection t = g * word_with_function(b, w, f);
    if (word_degree(w) % 2 == 1) t *= Rational(-1);  // -(-1)^{q-1} = (-1)^q
    out += t;
  }
  return out;
}

// L_{e_i} e_J = Σ_s e_{j1}∧…∧[e_i, e_{js}]∧…
PolySection lie_derivative_word(const PolyLieAlgebroid& b, std::size_t i, ExtWord w) {
  PolySection out(b.rank(), b.nvars());
  ExtWord prefix = 0;
  for (auto j : word_indices(w)) {
    const ExtWord suffix = w & ~prefix & ~(ExtWord{1} << j);
    out += wedge(wedge(word_section(b, prefix), b.frame_bracket(i, j)), word_section(b, suffix));
    prefix |= ExtWord{1} << j;
  }
  return out;
}

// [e_i, Q] = Σ (ρ(e_i)g) e_J + g L_{e_i} e_J.
PolySection frame_with(const PolyLieAlgebroid& b, std::size_t i, const PolySection& q) {
  PolySection out(b.rank(), b.nvars());
  for (const auto& [w, g] : q.terms()) {
    out += b.anchor_apply(i, g) * word_section(b, w);
    if (w != 0) out += g * lie_derivative_word(b, i, w);
  }
  return out;
}

// [e_I, Q] for Q homogeneous of degree q:
// [e_{i1}∧X', Q] = e_{i1}∧[X',Q] + (-1)^{(q-1)(|I|-1)} [e_{i1}, Q]∧X'.
PolySection word_with(const PolyLieAlgebroid& b, ExtWord w, const PolySection& q, int qdeg) {
  const auto idx = word_indices(w);
  const std::size_t first = idx.front();
  const ExtWord rest = w & ~(ExtWord{1} << first);
  if (rest == 0) return frame_with(b, first, q);
  PolySection out = wedge(word_section(b, ExtWord{1} << first), word_with(b, rest, q, qdeg));
  PolySection t = wedge(frame_with(b, first, q), word_section(b, rest));
  if (((qdeg - 1) * static_cast<int>(idx.size() - 1)) % 2 != 0) t *= Rational(-1);
  return out += t;
}

ExtElement to_ext(const PolySection& s, const std::vector<Rational>& p) { return s.evaluate(p); }

}  // namespace

AlgebroidReport check_algebroid(const PolyLieAlgebroid& b) {
  AlgebroidReport r;
  const std::size_t n = b.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(b.constant(i, j, k) + b.constant(j, i, k)).is_zero())
          r.failures.push_back("antisymmetry fails for c^" + std::to_string(k + 1) + "_{" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + "}");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorField lhs = lie_bracket(b.anchor(i), b.anchor(j));
      VectorField rhs(b.nvars(), Polynomial(b.nvars()));
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < b.nvars(); ++a) rhs[a] += b.constant(i, j, k) * b.anchor(k)[a];
      if (lhs != rhs)
        r.failures.push_back("anchor is not a morphism on [" + frame_name(i) + "," + frame_name(j) + "]");
    }
  }
  // [[e_i,e_j],e_l] with [f e_a, e_l] = f [e_a, e_l] - (ρ(e_l) f) e_a.
  auto double_bracket = [&](std::size_t i, std::size_t j, std::size_t l) {
    PolySection out(n, b.nvars());
    for (std::size_t a = 0; a < n; ++a) {
      const Polynomial& f = b.constant(i, j, a);
      if (f.is_zero()) continue;
      out += f * b.frame_bracket(a, l);
      out -= b.anchor_apply(l, f) * word_section(b, ExtWord{1} << a);
    }
    return out;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = j + 1; l < n; ++l) {
        const PolySection jac = double_bracket(i, j, l) + double_bracket(j, l, i) + double_bracket(l, i, j);
        if (!jac.is_zero())
          r.failures.push_back("Jacobi fails on (" + frame_name(i) + "," + frame_name(j) + "," + frame_name(l) +
                               "): " + jac.to_string());
      }
  return r;
}

PolySection d_B(const PolyLieAlgebroid& b, const PolySection& alpha) {
  b.enforce(alpha, "d_B");
  const std::size_t n = b.rank();
  std::vector<PolySection> de(n, PolySection(n, b.nvars()));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        de[k].add((ExtWord{1} << i) | (ExtWord{1} << j), -b.constant(i, j, k));
  // d(e^{i1} ∧ rest) = de^{i1} ∧ rest - e^{i1} ∧ d(rest).
  std::map<ExtWord, PolySection> cache;
  auto d_word = [&](auto&& self, ExtWord w) -> PolySection {
    if (w == 0) return PolySection(n, b.nvars());
    if (auto it = cache.find(w); it != cache.end()) return it->second;
    const std::size_t first = word_indices(w).front();
    const ExtWord rest = w & ~(ExtWord{1} << first);
    PolySection out = wedge(de[first], word_section(b, rest));
    out -= wedge(word_section(b, ExtWord{1} << first), self(self, rest));
    cache.emplace(w, out);
    return out;
  };
  PolySection out(n, b.nvars());
  for (const auto& [w, f] : alpha.terms()) {
    PolySection df(n, b.nvars());
    for (std::size_t i = 0; i < n; ++i) df.add(ExtWord{1} << i, b.anchor_apply(i, f));
    out += wedge(df, word_section(b, w));
    out += f * d_word(d_word, w);
  }
  b.enforce(out, "d_B");
  return out;
}

PolySection schouten(const PolyLieAlgebroid& b, const PolySection& p, const PolySection& q) {
  b.enforce(p, "schouten");
  b.enforce(q, "schouten");
  PolySection out(b.rank(), b.nvars());
  std::map<int, PolySection> q_parts;
  for (const auto& [w, g] : q.terms()) q_parts.try_emplace(word_degree(w), b.rank(), b.nvars()).first->second.add(w, g);
  for (const auto& [w, f] : p.terms()) {
    for (const auto& [qdeg, qq] : q_parts) {
      if (w == 0) {
        out += function_with(b, f, qq);
        continue;
      }
      // [fX, Q] = f[X,Q] + (-1)^{(q-1)|X|} [f,Q]∧X.
      out += f * word_with(b, w, qq, qdeg);
      PolySection t = wedge(function_with(b, f, qq), word_section(b, w));
      if (((qdeg - 1) * word_degree(w)) % 2 != 0) t *= Rational(-1);
      out += t;
    }
  }
  b.enforce(out, "schouten");
  return out;
}

PolySection sharp(const PolySection& pi, const PolySection& xi) { return -contract(xi, pi); }

PolySection wedge3_sharp(const PolySection& pi, const PolySection& h) {
  if (!pi.is_zero() && pi.degree() != 2) throw Error("wedge3_sharp: pi must be a bivector");
  if (!h.is_zero() && h.degree() != 3) throw Error("wedge3_sharp: H must be a 3-form");
  const std::size_t n = pi.rank();
  std::vector<PolySection> images;
  for (std::size_t a = 0; a < n; ++a) images.push_back(sharp(pi, PolySection::generator(n, pi.nvars(), a)));
  PolySection out(n, pi.nvars());
  for (ExtWord w : exterior_basis(n, 3)) {
    const auto idx = word_indices(w);
    const PolySection v =
        contract(images[idx[2]], contract(images[idx[1]], contract(images[idx[0]], h)));
    out.add(w, v.coefficient(0));
  }
  return out;
}

PolySection twisted_poisson_residual(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h) {
  if (!pi.is_zero() && pi.degree() != 2) throw Error("twisted_poisson_residual: pi must be a bivector");
  if (!h.is_zero() && h.degree() != 3) throw Error("twisted_poisson_residual: H must be a 3-form");
  const PolySection dh = d_B(b, h);
  if (!dh.is_zero()) throw Error("twisted_poisson_residual: H is not closed, d_B H = " + dh.to_string());
  PolySection out = schouten(b, pi, pi) + Rational(2) * wedge3_sharp(pi, h);
  b.enforce(out, "twisted_poisson_residual");
  return out;
}

CourantSection courant_bracket(const PolyLieAlgebroid& b, const PolySection& h, const CourantSection& u,
                               const CourantSection& v) {
  CourantSection out;
  out.vector = schouten(b, u.vector, v.vector);
  out.form = contract(u.vector, d_B(b, v.form)) + d_B(b, contract(u.vector, v.form)) -
             contract(v.vector, d_B(b, u.form)) + contract(v.vector, contract(u.vector, h));
  b.enforce(out.form, "courant_bracket");
  return out;
}

CourantSection b_field_apply(const PolySection& omega, const CourantSection& u) {
  return {u.vector, u.form + contract(u.vector, omega)};
}

BFieldReport b_field_transform(const PolyLieAlgebroid& b, const PolySection& h, const PolySection& omega) {
  if (!omega.is_zero() && omega.degree() != 2) throw Error("b_field_transform: omega must be a 2-form");
  BFieldReport r;
  r.target_twist = h - d_B(b, omega);
  const std::size_t n = b.rank(), m = b.nvars();
  const PolySection zero(n, m);
  std::vector<std::pair<std::string, CourantSection>> sections;
  for (std::size_t i = 0; i < n; ++i) {
    sections.push_back({frame_name(i), {PolySection::generator(n, m, i), zero}});
    sections.push_back({"e^" + std::to_string(i + 1), {zero, PolySection::generator(n, m, i)}});
  }
  if (m > 0) {
    const Polynomial x = Polynomial::variable(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sections.push_back({"x1*" + frame_name(i), {x * PolySection::generator(n, m, i), zero}});
      sections.push_back({"x1*e^" + std::to_string(i + 1), {zero, x * PolySection::generator(n, m, i)}});
    }
  }
  for (const auto& [nu, u] : sections) {
    for (const auto& [nv, v] : sections) {
      ++r.pairs_checked;
      const CourantSection lhs = b_field_apply(omega, courant_bracket(b, h, u, v));
      const CourantSection rhs = courant_bracket(b, r.target_twist, b_field_apply(omega, u), b_field_apply(omega, v));
      if (!(lhs == rhs)) r.failures.push_back("bracket of " + nu + " and " + nv + " is not preserved");
    }
  }
  return r;
}

bool is_fixed_point(const PolyLieAlgebroid& b, const PolySection& pi, const std::vector<Rational>& p) {
  b.enforce(pi, "is_fixed_point");
  const RMatrix rho = b.anchor_at(p);
  const std::size_t n = b.rank();
  for (std::size_t j = 0; j < n; ++j) {
    const ExtElement v = sharp(pi, PolySection::generator(n, b.nvars(), j)).evaluate(p);
    const RVector col = v.is_zero() ? RVector(n) : coordinates(v, 1);
    if (!is_zero(rho.apply(col))) return false;
  }
  return true;
}

ExtElement germ_differential(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                             const std::vector<Rational>& p, const PolySection& section) {
  ExtElement out = to_ext(schouten(b, pi, section), p);
  const ExtElement pi_p = pi.evaluate(p), h_p = h.evaluate(p), s_p = section.evaluate(p);
  if (!pi_p.is_zero() && !h_p.is_zero() && !s_p.is_zero())
    out += Rational(1, 2) * triple_sharp(pi_p, pi_p, s_p, h_p);
  return out;
}

GermComplex germ_complex(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                         const std::vector<Rational>& p, std::uint64_t seed, std::size_t perturbations) {
  if (!is_fixed_point(b, pi, p)) throw Error("germ_complex: p is not a fixed point (rho_p o pi#_p != 0)");
  if (!twisted_poisson_residual(b, pi, h).is_zero()) throw Error("germ_complex: pi is not H-twisted Poisson");
  const std::size_t n = b.rank(), m = b.nvars();
  GermComplex g;
  g.point = p;
  g.anchor_kernel = Subspace(n, kernel_basis(b.anchor_at(p)));
  const std::vector<Subspace> powers = exterior_powers(g.anchor_kernel, 3);
  auto power = [&](std::size_t k) { return k < powers.size() ? powers[k] : Subspace(0); };
  auto dim = [&](std::size_t k) { return k <= n ? exterior_basis(n, k).size() : std::size_t{0}; };
  auto image = [&](const PolySection& s, std::size_t k) {
    const ExtElement v = germ_differential(b, pi, h, p, s);
    return v.is_zero() ? RVector(dim(k + 1)) : coordinates(v, k + 1);
  };

  std::vector<RMatrix> diffs;
  for (std::size_t k = 1; k <= 2; ++k) {
    RMatrix d(dim(k + 1), dim(k));
    if (k <= n) {
      const auto words = exterior_basis(n, k);
      for (std::size_t c = 0; c < words.size(); ++c) {
        const RVector col = image(word_section(b, words[c]), k);
        for (std::size_t r = 0; r < col.size(); ++r) d(r, c) = col[r];
      }
    }
    diffs.push_back(std::move(d));
  }
  g.fiber = ChainComplex(1, {dim(1), dim(2), dim(3)}, diffs);
  g.quotient = quotient_complex(g.fiber, {power(1), power(2), power(3)});

  // Change of extension: add an element whose value at p lies in ∧^k ker ρ_p, built from
  // constants in ∧^k ker ρ_p and coefficients vanishing at p.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t t = 0; t < perturbations && n > 0; ++t) {
    const std::size_t k = 1 + t % std::min<std::size_t>(2, n);
    const auto words = exterior_basis(n, k);
    PolySection s(n, m);
    const Subspace sub = power(k);
    for (const auto& v : sub.basis())
      s += PolySection::constant(Rational(coef(rng)) * from_coordinates(n, k, v), m);
    for (std::size_t a = 0; a < m; ++a) {
      Polynomial f = Polynomial::variable(m, a) - Polynomial::constant(m, p[a]);
      Polynomial g2 = Polynomial::constant(m, coef(rng));
      for (std::size_t c = 0; c < m; ++c) g2 += Rational(coef(rng)) * Polynomial::variable(m, c);
      s += (f * g2) * word_section(b, words[static_cast<std::size_t>(rng() % words.size())]);
    }
    if (k + 1 <= n && !power(k + 1).contains(image(s, k)))
      throw Error("germ_complex: differential depends on the extension (perturbation " + std::to_string(t) + ")");
    ++g.perturbations_checked;
  }
  return g;
}

StabilityReport stability_verdict(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                                  const std::vector<Rational>& p, std::uint64_t seed) {
  StabilityReport r;
  if (!is_fixed_point(b, pi, p)) {
    r.verdict = Verdict::NotFixedPoint;
    r.diagnostics.push_back("rho_p o pi#_p is nonzero");
    return r;
  }
  const GermComplex g = germ_complex(b, pi, h, p, seed);
  r.complex_dims = {0, g.quotient.dim(1), g.quotient.dim(2), g.quotient.dim(3)};
  r.h2_dim = g.quotient.cohomology(2).dim;
  r.family_dim = g.quotient.kernel_dim(1);
  r.verdict = r.h2_dim == 0 ? Verdict::Stable : Verdict::Inconclusive;
  r.diagnostics.push_back("fixed point; twisted Poisson residual vanishes");
  r.diagnostics.push_back("dim ker rho_p = " + std::to_string(g.anchor_kernel.dim()));
  r.diagnostics.push_back("extension independence checked on " + std::to_string(g.perturbations_checked) +
                          " perturbations");
  return r;
}

LieAlgebra linearized_lie_algebra(const PolySection& pi, const std::vector<Rational>& p) {
  const std::size_t m = pi.nvars();
  if (pi.rank() != m) throw Error("linearized_lie_algebra: pi must live on the tangent model (rank = dimension)");
  if (!pi.is_zero() && pi.degree() != 2) throw Error("linearized_lie_algebra: pi must be a bivector");
  if (!pi.evaluate(p).is_zero()) throw Error("linearized_lie_algebra: pi does not vanish at p");
  BracketTensor c(m);
  for (const auto& [w, f] : pi.terms()) {
    const auto idx = word_indices(w);
    for (std::size_t k = 0; k < m; ++k) c.set_antisymmetric(idx[0], idx[1], k, f.derivative(k).evaluate(p));
  }
  return LieAlgebra(c);
}

FixedPointGerm induced_germ(const PolyLieAlgebroid& b, const PolySection& pi, const PolySection& h,
                            const std::vector<Rational>& p) {
  if (!is_fixed_point(b, pi, p)) throw Error("induced_germ: p is not a fixed point");
  const std::size_t n = b.rank(), m = b.nvars();
  std::vector<CourantSection> s;
  std::vector<RVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    const PolySection xi = PolySection::generator(n, m, i);
    s.push_back({sharp(pi, xi), xi});
    const ExtElement v = s.back().vector.evaluate(p);
    RVector e(2 * n);
    if (!v.is_zero()) {
      const RVector c = coordinates(v, 1);
      for (std::size_t j = 0; j < n; ++j) e[j] = c[j];
    }
    e[n + i] = 1;
    basis.push_back(std::move(e));
  }
  BracketTensor c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CourantSection br = courant_bracket(b, h, s[i], s[j]);
      const ExtElement form = br.form.evaluate(p), vec = br.vector.evaluate(p);
      const RVector eta = form.is_zero() ? RVector(n) : coordinates(form, 1);
      // The bracket of sections of the graph stays in the graph.
      RVector expected(n);
      for (std::size_t k = 0; k < n; ++k) expected = expected + eta[k] * RVector(basis[k].begin(), basis[k].begin() + static_cast<std::ptrdiff_t>(n));
      if (!(expected == (vec.is_zero() ? RVector(n) : coordinates(vec, 1))))
        throw Error("induced_germ: bracket leaves the graph of pi; pi is not twisted Poisson");
      for (std::size_t k = 0; k < n; ++k) c.at(i, j, k) = eta[k];
    }
  }
  RMatrix pairing = hyperbolic_pairing(n);
  std::vector<RVector> kernel;
  for (const auto& v : kernel_basis(b.anchor_at(p))) {
    RVector e(2 * n);
    for (std::size_t j = 0; j < n; ++j) e[j] = v[j];
    kernel.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < n; ++i) {
    RVector e(2 * n);
    e[n + i] = 1;
    kernel.push_back(std::move(e));
  }
  return FixedPointGerm(std::move(pairing), std::move(basis), LieAlgebra(c), Subspace(2 * n, kernel));
}

}  // namespace dirac_stab
