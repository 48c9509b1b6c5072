#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>

#include "dirac_stab/exterior.hpp"
#include "dirac_stab/linalg.hpp"

namespace test_support {

inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("DIRAC_STAB_SEED")) return std::stoull(s);
  return 20240611;
}

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(base_seed() * 1000003u + salt); }

/// Small rational p/q with |p| ≤ num_bound, 1 ≤ q ≤ den_bound.
inline dirac_stab::Rational random_rational(std::mt19937_64& g, int num_bound = 3, int den_bound = 2) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  dirac_stab::Rational r(num(g), den(g));
  r.canonicalize();
  return r;
}

inline dirac_stab::RVector random_vector(std::mt19937_64& g, std::size_t n, int num_bound = 3) {
  dirac_stab::RVector v(n);
  for (auto& x : v) x = random_rational(g, num_bound);
  return v;
}

/// Random homogeneous element of ∧^k over an n-dimensional space.
inline dirac_stab::ExtElement random_form(std::mt19937_64& g, std::size_t n, std::size_t k, int num_bound = 2) {
  dirac_stab::ExtElement e(n);
  for (auto w : dirac_stab::exterior_basis(n, k)) e.add(w, random_rational(g, num_bound));
  return e;
}

}  // namespace test_support
