#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dirac_stab/rational.hpp"

namespace dirac_stab {

using Exponents = std::vector<unsigned>;

/// Graded-lex order: total degree first, then lexicographic on exponents.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

unsigned total_degree(const Exponents& e);

/// Sparse polynomial over the rationals in x_1..x_m. No zero coefficients are stored.
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, GradedLex>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  static Polynomial constant(std::size_t nvars, const Rational& c);
  /// x_{i+1} (zero-based index i).
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(const Exponents& e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const;
  Rational coefficient(const Exponents& e) const;
  void add(const Exponents& e, const Rational& c);

  Polynomial derivative(std::size_t i) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  /// The terms of total degree k.
  Polynomial homogeneous_part(unsigned k) const;
  std::string to_string() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

 private:
  void check_vars(const Polynomial& o) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Polynomial vector field Σ_j V_j ∂_{x_j}.
using VectorField = std::vector<Polynomial>;

Polynomial apply(const VectorField& v, const Polynomial& f);
VectorField lie_bracket(const VectorField& a, const VectorField& b);

}  // namespace dirac_stab
