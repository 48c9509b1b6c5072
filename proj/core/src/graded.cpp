#include "dirac_stab/graded.hpp"

#include <algorithm>
#include <numeric>

namespace dirac_stab {

GradedVectorSpace::GradedVectorSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
  std::sort(basis_.begin(), basis_.end(),
            [](const BasisElement& a, const BasisElement& b) { return a.label < b.label; });
  for (Index i = 0; i < basis_.size(); ++i) {
    if (basis_[i].label.empty()) throw Error("GradedVectorSpace: empty basis label");
    if (!by_label_.emplace(basis_[i].label, i).second) {
      throw Error("GradedVectorSpace: duplicate basis label \"" + basis_[i].label + "\"");
    }
  }
}

std::optional<Index> GradedVectorSpace::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Index GradedVectorSpace::index_of(const std::string& label) const {
  auto i = find(label);
  if (!i) throw Error("unknown basis label \"" + label + "\"");
  return *i;
}

std::set<int> GradedVectorSpace::degrees() const {
  std::set<int> out;
  for (const auto& b : basis_) out.insert(b.degree);
  return out;
}

std::vector<Index> GradedVectorSpace::indices_of_degree(int degree) const {
  std::vector<Index> out;
  for (Index i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == degree) out.push_back(i);
  return out;
}

bool operator==(const GradedVectorSpace& a, const GradedVectorSpace& b) {
  if (a.basis_.size() != b.basis_.size()) return false;
  for (std::size_t i = 0; i < a.basis_.size(); ++i) {
    if (a.basis_[i].label != b.basis_[i].label || a.basis_[i].degree != b.basis_[i].degree) return false;
  }
  return true;
}

GradedVector GradedVector::basis(Index i, Rational c) {
  GradedVector v;
  v.add(i, c);
  return v;
}

GradedVector GradedVector::from_dense(const RVector& dense) {
  GradedVector v;
  for (Index i = 0; i < dense.size(); ++i)
    if (sgn(dense[i]) != 0) v.terms_.emplace_back(i, dense[i]);
  return v;
}

Rational GradedVector::coefficient(Index i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const Term& t, Index key) { return t.first < key; });
  if (it != terms_.end() && it->first == i) return it->second;
  return 0;
}

void GradedVector::add(Index i, const Rational& c) {
  if (sgn(c) == 0) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const Term& t, Index key) { return t.first < key; });
  if (it != terms_.end() && it->first == i) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{i, c});
  }
}

void GradedVector::axpy(const Rational& c, const GradedVector& other) {
  if (sgn(c) == 0 || other.terms_.empty()) return;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      merged.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (sgn(s) != 0) merged.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
}

RVector GradedVector::to_dense(std::size_t dim) const {
  RVector out(dim);
  for (const auto& [i, c] : terms_) {
    if (i >= dim) throw Error("GradedVector::to_dense: index out of range");
    out[i] = c;
  }
  return out;
}

GradedVector& GradedVector::operator+=(const GradedVector& o) {
  axpy(1, o);
  return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& o) {
  axpy(-1, o);
  return *this;
}

GradedVector& GradedVector::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

std::optional<int> homogeneous_degree(const GradedVector& v, const GradedVectorSpace& space) {
  std::optional<int> deg;
  for (const auto& [i, c] : v.terms()) {
    if (i >= space.dim()) throw Error("vector references an index outside the space");
    if (!deg) {
      deg = space.degree(i);
    } else if (*deg != space.degree(i)) {
      return std::nullopt;
    }
  }
  return deg;
}

bool is_homogeneous(const GradedVector& v, const GradedVectorSpace& space) {
  return v.is_zero() || homogeneous_degree(v, space).has_value();
}

int koszul_sign(std::span<const std::size_t> permutation, std::span<const int> degrees) {
  const std::size_t n = permutation.size();
  if (degrees.size() != n) throw Error("koszul_sign: permutation and degree lengths differ");
  std::vector<bool> seen(n, false);
  for (auto p : permutation) {
    if (p >= n || seen[p]) throw Error("koszul_sign: input is not a permutation");
    seen[p] = true;
  }
  // Elements i<j that end up in the opposite order each contribute (-1)^{|x_i||x_j|}.
  int sign = 1;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (permutation[a] > permutation[b] && (degrees[permutation[a]] & 1) && (degrees[permutation[b]] & 1)) {
        sign = -sign;
      }
    }
  }
  return sign;
}

std::vector<std::vector<std::size_t>> unshuffles(std::size_t p, std::size_t q) {
  const std::size_t n = p + q;
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> choose(n, false);
  std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(p), true);
  // Enumerate p-subsets in lexicographic order of their indicator (prev_permutation on a
  // sorted-descending mask visits each subset once).
  do {
    std::vector<std::size_t> perm;
    perm.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      if (choose[i]) perm.push_back(i);
    for (std::size_t i = 0; i < n; ++i)
      if (!choose[i]) perm.push_back(i);
    out.push_back(std::move(perm));
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return out;
}

std::optional<std::pair<SymWord, int>> SymWord::canonical(std::vector<Index> letters,
                                                          const GradedVectorSpace& space) {
  int sign = 1;
  for (std::size_t a = 0; a < letters.size(); ++a) {
    if (letters[a] >= space.dim()) throw Error("SymWord: letter outside the space");
    for (std::size_t b = a + 1; b < letters.size(); ++b) {
      if (letters[a] == letters[b]) {
        if (space.is_odd(letters[a])) return std::nullopt;
      } else if (letters[a] > letters[b] && space.is_odd(letters[a]) && space.is_odd(letters[b])) {
        sign = -sign;
      }
    }
  }
  std::sort(letters.begin(), letters.end());
  return std::make_pair(SymWord(std::move(letters)), sign);
}

int SymWord::total_degree(const GradedVectorSpace& space) const {
  int d = 0;
  for (auto l : letters_) d += space.degree(l);
  return d;
}

std::string SymWord::to_string(const GradedVectorSpace& space) const {
  std::string s = "(";
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ",";
    s += space.label(letters_[i]);
  }
  return s + ")";
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace dirac_stab
