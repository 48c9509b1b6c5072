#pragma once

#include <random>
#include <string>
#include <vector>

#include "dirac_stab/algebroid.hpp"
#include "support.hpp"

namespace test_support {

using namespace dirac_stab;

inline std::vector<Rational> origin(std::size_t m) { return std::vector<Rational>(m, Rational(0)); }

inline Polynomial var(std::size_t m, std::size_t i) { return Polynomial::variable(m, i); }
inline Polynomial cst(std::size_t m, const Rational& c) { return Polynomial::constant(m, c); }

/// Word e_{i1}∧…∧e_{ik} from 1-based indices.
inline ExtWord word1(std::initializer_list<std::size_t> one_based) {
  ExtWord w = 0;
  for (auto i : one_based) w |= ExtWord{1} << (i - 1);
  return w;
}

inline PolySection section(std::size_t rank, ExtWord w, const Polynomial& c) { return PolySection::monomial(rank, w, c); }

/// π = x4 e1∧e4 (+ x5 e1∧e2 with the parameter coordinate).
inline PolySection ctangent_pi(bool with_t = false) {
  const std::size_t m = with_t ? 5 : 4;
  PolySection pi = section(4, word1({1, 4}), var(m, 3));
  if (with_t) pi += section(4, word1({1, 2}), var(m, 4));
  return pi;
}

inline PolySection ctangent_h(bool with_t = false) {
  return section(4, word1({1, 2, 3}), cst(with_t ? 5 : 4, 1));
}

/// Lie algebra over a point as an algebroid with zero anchor.
inline PolyLieAlgebroid point_algebroid(const LieAlgebra& g) {
  std::vector<PolyStructureConstant> cs;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(g.constant(i, j, k)) != 0) cs.push_back({i, j, k, cst(0, g.constant(i, j, k))});
  return PolyLieAlgebroid(0, std::vector<VectorField>(n), cs);
}

/// π = Σ_{i<j} c^k_{ij} x_k e_i∧e_j on the tangent model of g*.
inline PolySection lie_poisson(const LieAlgebra& g) {
  const std::size_t n = g.dim();
  PolySection pi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(g.constant(i, j, k)) != 0)
          pi.add((ExtWord{1} << i) | (ExtWord{1} << j), g.constant(i, j, k) * var(n, k));
  return pi;
}

inline Polynomial random_polynomial(std::mt19937_64& g, std::size_t m, unsigned max_degree, std::size_t terms) {
  Polynomial p(m);
  std::uniform_int_distribution<unsigned> e(0, max_degree);
  std::uniform_int_distribution<std::size_t> v(0, m == 0 ? 0 : m - 1);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents ex(m, 0);
    const unsigned d = e(g);
    for (unsigned s = 0; s < d && m > 0; ++s) ++ex[v(g)];
    p.add(ex, random_rational(g, 2));
  }
  return p;
}

/// Homogeneous section of degree k with up to `terms` random words.
inline PolySection random_section(std::mt19937_64& g, std::size_t rank, std::size_t m, std::size_t k,
                                  unsigned max_degree, std::size_t terms = 2) {
  PolySection s(rank, m);
  const auto words = exterior_basis(rank, k);
  if (words.empty()) return s;
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (std::size_t t = 0; t < terms; ++t) s.add(words[pick(g)], random_polynomial(g, m, max_degree, 2));
  return s;
}

}  // namespace test_support
