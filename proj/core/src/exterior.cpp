#include "dirac_stab/exterior.hpp"

#include <algorithm>
#include <array>

namespace dirac_stab {

namespace {

void check_dim(std::size_t n) {
  if (n > 32) throw Error("exterior algebra supports at most 32 generators");
}

void check_same(const ExtElement& a, const ExtElement& b) {
  if (a.space_dim() != b.space_dim()) throw Error("exterior elements over different spaces");
}

}  // namespace

std::vector<std::size_t> word_indices(ExtWord w) {
  std::vector<std::size_t> out;
  while (w) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(w)));
    w &= w - 1;
  }
  return out;
}

ExtWord word_from_indices(const std::vector<std::size_t>& indices) {
  ExtWord w = 0;
  for (auto i : indices) {
    if (i >= 32) throw Error("exterior index out of range");
    const ExtWord bit = ExtWord{1} << i;
    if (w & bit) throw Error("repeated index in wedge monomial");
    w |= bit;
  }
  return w;
}

std::vector<ExtWord> exterior_basis(std::size_t n, std::size_t k) {
  std::vector<ExtWord> out;
  if (k > n) return out;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w)
    if (static_cast<std::size_t>(word_degree(static_cast<ExtWord>(w))) == k) out.push_back(static_cast<ExtWord>(w));
  return out;
}

int wedge_sign(ExtWord a, ExtWord b) {
  if (a & b) return 0;
  // Each letter of b must move past the letters of a that are larger than it.
  int swaps = 0;
  for (ExtWord rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const ExtWord above = j == 31 ? 0 : ~((ExtWord{2} << j) - 1);
    swaps += std::popcount(a & above);
  }
  return (swaps & 1) ? -1 : 1;
}

ExtElement::ExtElement(std::size_t n) : n_(n) { check_dim(n); }

ExtElement ExtElement::one(std::size_t n) { return monomial(n, 0, 1); }

ExtElement ExtElement::monomial(std::size_t n, ExtWord w, Rational c) {
  ExtElement e(n);
  if (n < 32 && (w >> n) != 0) throw Error("wedge monomial outside the space");
  e.add(w, c);
  return e;
}

ExtElement ExtElement::generator(std::size_t n, std::size_t i, Rational c) {
  if (i >= n) throw Error("generator index out of range");
  return monomial(n, ExtWord{1} << i, std::move(c));
}

ExtElement ExtElement::from_vector(const RVector& v) {
  ExtElement e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e.add(ExtWord{1} << i, v[i]);
  return e;
}

Rational ExtElement::coefficient(ExtWord w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ExtElement::add(ExtWord w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int ExtElement::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) {
    if (d < 0) {
      d = word_degree(w);
    } else if (d != word_degree(w)) {
      return -1;
    }
  }
  return d;
}

ExtElement ExtElement::part(int degree) const {
  ExtElement out(n_);
  for (const auto& [w, c] : terms_)
    if (word_degree(w) == degree) out.terms_.emplace(w, c);
  return out;
}

RVector ExtElement::linear_coefficients() const {
  RVector v(n_);
  for (const auto& [w, c] : terms_)
    if (word_degree(w) == 1) v[static_cast<std::size_t>(std::countr_zero(w))] = c;
  return v;
}

ExtElement& ExtElement::operator+=(const ExtElement& o) {
  check_same(*this, o);
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

ExtElement& ExtElement::operator-=(const ExtElement& o) {
  check_same(*this, o);
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

ExtElement& ExtElement::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

std::string ExtElement::to_string(const std::string& symbol) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += dirac_stab::to_string(c);
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

ExtElement wedge(const ExtElement& a, const ExtElement& b) {
  check_same(a, b);
  ExtElement out(a.space_dim());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      const int s = wedge_sign(wa, wb);
      if (s == 0) continue;
      out.add(wa | wb, s > 0 ? Rational(ca * cb) : Rational(-ca * cb));
    }
  }
  return out;
}

ExtElement contract_basis(std::size_t i, const ExtElement& alpha) {
  ExtElement out(alpha.space_dim());
  const ExtWord bit = ExtWord{1} << i;
  for (const auto& [w, c] : alpha.terms()) {
    if (!(w & bit)) continue;
    const int position = std::popcount(w & (bit - 1));
    out.add(w & ~bit, (position & 1) ? Rational(-c) : c);
  }
  return out;
}

ExtElement contract(const RVector& a, const ExtElement& alpha) {
  if (a.size() != alpha.space_dim()) throw Error("contract: vector and form live over different spaces");
  if (sgn(alpha.coefficient(0)) != 0) throw Error("contract: cannot contract a degree-0 element");
  ExtElement out(alpha.space_dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    out += a[i] * contract_basis(i, alpha);
  }
  return out;
}

Rational pair(const ExtElement& form, const ExtElement& multivector) {
  check_same(form, multivector);
  Rational s = 0;
  for (const auto& [w, c] : form.terms()) s += c * multivector.coefficient(w);
  return s;
}

ExtElement triple_sharp(const ExtElement& alpha, const ExtElement& beta, const ExtElement& gamma,
                        const ExtElement& psi) {
  check_same(alpha, beta);
  check_same(alpha, gamma);
  check_same(alpha, psi);
  for (const auto& [w, c] : psi.terms())
    if (word_degree(w) != 3) throw Error("triple_sharp: Psi must be a trivector");
  const int da = alpha.degree(), db = beta.degree(), dg = gamma.degree();
  if (da >= 0 && db >= 0 && dg >= 0 && da + db + dg < 3)
    throw Error("triple_sharp: output degree would be negative");

  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
  const std::size_t n = alpha.space_dim();
  ExtElement out(n);
  for (const auto& [w, coeff] : psi.terms()) {
    const auto x = word_indices(w);
    std::array<ExtElement, 3> ia, ib, ig;
    for (int k = 0; k < 3; ++k) {
      ia[k] = contract_basis(x[k], alpha);
      ib[k] = contract_basis(x[k], beta);
      ig[k] = contract_basis(x[k], gamma);
    }
    for (std::size_t p = 0; p < perms.size(); ++p) {
      const auto& s = perms[p];
      ExtElement term = wedge(wedge(ia[s[0]], ib[s[1]]), ig[s[2]]);
      out += (p < 3 ? coeff : Rational(-coeff)) * term;
    }
  }
  return out;
}

}  // namespace dirac_stab

namespace dirac_stab {

RVector coordinates(const ExtElement& e, std::size_t k) {
  const auto words = exterior_basis(e.space_dim(), k);
  RVector v(words.size());
  for (const auto& [w, c] : e.terms()) {
    if (static_cast<std::size_t>(word_degree(w)) != k) throw Error("coordinates: element is not of degree " + std::to_string(k));
    v[static_cast<std::size_t>(std::lower_bound(words.begin(), words.end(), w) - words.begin())] = c;
  }
  return v;
}

ExtElement from_coordinates(std::size_t n, std::size_t k, const RVector& v) {
  const auto words = exterior_basis(n, k);
  if (v.size() != words.size()) throw Error("from_coordinates: dimension mismatch");
  ExtElement e(n);
  for (std::size_t i = 0; i < words.size(); ++i)
    if (sgn(v[i]) != 0) e.add(words[i], v[i]);
  return e;
}

std::vector<Subspace> exterior_powers(const Subspace& s, std::size_t max_degree) {
  const std::size_t n = s.ambient_dim();
  const std::size_t top = std::min(n, max_degree);
  std::vector<ExtElement> gens;
  for (const auto& b : s.basis()) gens.push_back(ExtElement::from_vector(b));
  std::vector<std::vector<RVector>> spans(top + 1);
  for (ExtWord mask = 0; mask < (ExtWord{1} << gens.size()); ++mask) {
    if (static_cast<std::size_t>(word_degree(mask)) > top) continue;
    ExtElement w = ExtElement::one(n);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((mask >> i) & 1) w = wedge(w, gens[i]);
    const auto k = static_cast<std::size_t>(word_degree(mask));
    spans[k].push_back(coordinates(w, k));
  }
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= top; ++k) out.emplace_back(exterior_basis(n, k).size(), spans[k]);
  return out;
}

}  // namespace dirac_stab
