#include "dirac_stab/polynomial.hpp"

#include <numeric>

namespace dirac_stab {

unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw Error("Polynomial::variable: index out of range");
  Exponents e(nvars, 0);
  e[i] = 1;
  return monomial(e, 1);
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p(e.size());
  p.add(e, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

Rational Polynomial::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw Error("Polynomial: exponent vector has the wrong length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::check_vars(const Polynomial& o) const {
  if (o.nvars_ != nvars_) throw Error("Polynomial: operands in different numbers of variables");
}

Polynomial Polynomial::derivative(std::size_t i) const {
  if (i >= nvars_) throw Error("Polynomial::derivative: index out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    --f[i];
    out.add(f, c * e[i]);
  }
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != nvars_) throw Error("Polynomial::evaluate: point has the wrong dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::homogeneous_part(unsigned k) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == k) out.add(e, c);
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) s += "-";
    } else {
      s += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      s += dirac_stab::to_string(mag);
    } else if (mag == 1) {
      s += mono;
    } else {
      s += dirac_stab::to_string(mag) + "*" + mono;
    }
  }
  return s;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_vars(o);
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_vars(b);
  Polynomial out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add(e, ca * cb);
    }
  return out;
}

Polynomial apply(const VectorField& v, const Polynomial& f) {
  if (v.size() != f.nvars()) throw Error("apply: vector field and polynomial dimensions differ");
  Polynomial out(f.nvars());
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!v[j].is_zero()) out += v[j] * f.derivative(j);
  return out;
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  if (a.size() != b.size()) throw Error("lie_bracket: dimension mismatch");
  VectorField out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(apply(a, b[j]) - apply(b, a[j]));
  return out;
}

}  // namespace dirac_stab
