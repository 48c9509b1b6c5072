#include "dirac_stab/linfty.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>

namespace dirac_stab {

namespace {

int degree_sum(const GradedVectorSpace& space, const std::vector<Index>& letters) {
  int d = 0;
  for (auto l : letters) d += space.degree(l);
  return d;
}

// Π over letters of 1/multiplicity!.
Rational multiplicity_weight(const std::vector<Index>& sorted) {
  Rational w = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      w *= inverse_factorial(static_cast<unsigned>(run));
      run = 1;
    }
  }
  return w;
}

struct WordHash {
  std::size_t operator()(const std::vector<Index>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h = h * 1000003u ^ (x + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }
};

}  // namespace

LInftyAlgebra::LInftyAlgebra(GradedVectorSpace space, std::size_t k_max, const std::vector<BracketEntry>& entries)
    : space_(std::move(space)), k_max_(k_max), tables_(k_max + 1) {
  for (const auto& e : entries) {
    const std::size_t k = e.letters.size();
    if (k == 0 || k > k_max_) throw Error("bracket entry arity outside 1..k_max");
    if (e.value.is_zero()) continue;
    const int target = degree_sum(space_, e.letters) + 1;
    for (const auto& [i, c] : e.value.terms()) {
      if (i >= space_.dim()) throw Error("bracket value outside the space");
      if (space_.degree(i) != target) {
        auto w = SymWord::canonical(e.letters, space_);
        throw Error("bracket on " + (w ? w->first.to_string(space_) : std::string("word")) +
                    " does not have degree +1");
      }
    }
    auto canon = SymWord::canonical(e.letters, space_);
    if (!canon) continue;
    GradedVector v = e.value;
    if (canon->second < 0) v *= Rational(-1);
    auto& slot = tables_[k][canon->first];
    slot += v;
    if (slot.is_zero()) tables_[k].erase(canon->first);
  }
}

const LInftyAlgebra::Table& LInftyAlgebra::table(std::size_t k) const {
  static const Table empty;
  if (k == 0 || k > k_max_) return empty;
  return tables_[k];
}

std::size_t LInftyAlgebra::entry_count() const {
  std::size_t n = 0;
  for (const auto& t : tables_) n += t.size();
  return n;
}

GradedVector LInftyAlgebra::bracket_on_basis(std::vector<Index> letters) const {
  const std::size_t k = letters.size();
  if (k == 0 || k > k_max_) return {};
  auto canon = SymWord::canonical(std::move(letters), space_);
  if (!canon) return {};
  const auto& t = tables_[k];
  auto it = t.find(canon->first);
  if (it == t.end()) return {};
  GradedVector v = it->second;
  if (canon->second < 0) v *= Rational(-1);
  return v;
}

GradedVector eval_bracket(const LInftyAlgebra& alg, std::span<const GradedVector> args) {
  for (const auto& a : args)
    if (!is_homogeneous(a, alg.space())) throw Error("eval_bracket: argument is not homogeneous");
  const std::size_t k = args.size();
  GradedVector out;
  if (k == 0 || k > alg.k_max()) return out;
  for (const auto& a : args)
    if (a.is_zero()) return out;
  std::vector<Index> letters(k);
  std::function<void(std::size_t, Rational)> expand = [&](std::size_t pos, Rational coeff) {
    if (pos == k) {
      out.axpy(coeff, alg.bracket_on_basis(letters));
      return;
    }
    for (const auto& [i, c] : args[pos].terms()) {
      letters[pos] = i;
      expand(pos + 1, coeff * c);
    }
  };
  expand(0, 1);
  return out;
}

namespace {

// The composite μ_a(μ_b(S), R) obtained by inserting the output letter y of μ_b(S) into
// the outer word T: the word X = S ∪ R, the number of unshuffles giving the split (S, R)
// of X and their common Koszul sign. False when X vanishes in S(V).
struct Composite {
  std::vector<Index> word;
  std::uint64_t count = 1;
  bool negative = false;
};

bool compose(const GradedVectorSpace& space, const std::vector<Index>& s, Index y, int y_degree,
             const std::vector<Index>& t, std::vector<Index>& rest, Composite& out) {
  rest.clear();
  bool removed = false;
  int outer_parity = 0;
  for (auto l : t) {
    if (!removed && l == y) {
      removed = true;
      continue;
    }
    if (l < y) outer_parity += space.degree(l);
    rest.push_back(l);
  }
  outer_parity *= y_degree;
  out.word.clear();
  std::merge(s.begin(), s.end(), rest.begin(), rest.end(), std::back_inserter(out.word));
  const auto& w = out.word;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && space.is_odd(w[i])) return false;
  out.count = 1;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const auto in_s = static_cast<unsigned>(std::count(s.begin(), s.end(), w[i]));
    out.count *= binomial(static_cast<unsigned>(j - i), in_s);
    i = j;
  }
  int swaps = 0;
  for (auto x : s)
    if (space.is_odd(x))
      for (auto r : rest)
        if (r < x && space.is_odd(r)) ++swaps;
  out.negative = ((swaps + outer_parity) & 1) != 0;
  return true;
}

// For each output letter y, the entries whose word contains y.
template <class Entry>
std::vector<std::vector<const Entry*>> index_by_letter(const std::vector<std::vector<Entry>>& entries,
                                                      std::size_t dim) {
  std::vector<std::vector<const Entry*>> containing(dim);
  for (const auto& arity : entries)
    for (const auto& e : arity) {
      const auto& l = e.word->letters();
      for (std::size_t i = 0; i < l.size(); ++i)
        if (i == 0 || l[i] != l[i - 1]) containing[l[i]].push_back(&e);
    }
  return containing;
}

void record_failures(const GradedVectorSpace& space, std::size_t n,
                     std::vector<std::pair<std::vector<Index>, GradedVector>> bad, JacobiReport& report) {
  std::sort(bad.begin(), bad.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [w, v] : bad) report.failures.push_back({n, SymWord::canonical(w, space)->first, std::move(v)});
}

// Same sum with every bracket scaled by the common denominator D, in checked 64-bit
// integers; identity values scale by D². Gives up (nullopt) when words do not pack into
// 64 bits or anything overflows.
std::optional<JacobiReport> check_jacobi_scaled(const LInftyAlgebra& alg, std::size_t n_max) {
  const auto& space = alg.space();
  if (space.dim() >= 255 || n_max + 1 > 8) return std::nullopt;
  mpz_class d = 1;
  for (std::size_t a = 1; a <= alg.k_max(); ++a)
    for (const auto& [w, v] : alg.table(a))
      for (const auto& [i, c] : v.terms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  constexpr std::int64_t bound = std::int64_t{1} << 40;
  if (d > bound) return std::nullopt;

  using Terms = std::vector<std::pair<Index, std::int64_t>>;
  struct Entry {
    const SymWord* word;
    Terms value;
  };
  std::vector<std::vector<Entry>> entries(alg.k_max() + 1);
  for (std::size_t a = 1; a <= alg.k_max(); ++a)
    for (const auto& [w, v] : alg.table(a)) {
      Entry e{&w, {}};
      for (const auto& [i, c] : v.terms()) {
        const mpz_class x = mpz_class(c.get_num() * (d / c.get_den()));
        if (abs(x) > bound) return std::nullopt;
        e.value.emplace_back(i, x.get_si());
      }
      entries[a].push_back(std::move(e));
    }
  const auto containing = index_by_letter(entries, space.dim());

  auto pack = [](const std::vector<Index>& w) {
    std::uint64_t key = 0;
    for (auto l : w) key = (key << 8) | static_cast<std::uint64_t>(l + 1);
    return key;
  };
  std::vector<std::unordered_map<std::uint64_t, Terms>> jac(n_max + 1);
  std::vector<Index> rest;
  Composite comp;
  for (std::size_t b = 1; b <= alg.k_max(); ++b)
    for (const auto& inner : entries[b]) {
      const auto& s = inner.word->letters();
      const int y_degree = inner.word->total_degree(space) + 1;
      for (const auto& [y, vy] : inner.value)
        for (const Entry* outer : containing[y]) {
          const std::size_t a = outer->word->arity();
          if (a + b < 2 || a + b - 2 > n_max) continue;
          if (!compose(space, s, y, y_degree, outer->word->letters(), rest, comp)) continue;
          std::int64_t coeff = 0;
          if (__builtin_mul_overflow(static_cast<std::int64_t>(comp.count), vy, &coeff)) return std::nullopt;
          if (comp.negative) coeff = -coeff;
          Terms& acc = jac[a + b - 2][pack(comp.word)];
          for (const auto& [i, c] : outer->value) {
            std::int64_t term = 0;
            if (__builtin_mul_overflow(coeff, c, &term)) return std::nullopt;
            auto it = std::lower_bound(acc.begin(), acc.end(), i, [](const auto& p, Index k) { return p.first < k; });
            if (it != acc.end() && it->first == i) {
              if (__builtin_add_overflow(it->second, term, &it->second)) return std::nullopt;
            } else {
              acc.insert(it, {i, term});
            }
          }
        }
    }

  JacobiReport report;
  report.n_max = n_max;
  report.vacuous_above = alg.k_max() == 0 ? 0 : 2 * alg.k_max() - 2;
  const Rational scale = Rational(1) / Rational(d * d);
  for (std::size_t n = 0; n <= n_max; ++n) {
    report.words_evaluated += jac[n].size();
    std::vector<std::pair<std::vector<Index>, GradedVector>> bad;
    for (const auto& [key, acc] : jac[n]) {
      GradedVector v;
      for (const auto& [i, c] : acc)
        if (c != 0) v.add(i, Rational(static_cast<long>(c)) * scale);
      if (v.is_zero()) continue;
      std::vector<Index> w;
      for (std::uint64_t k = key; k != 0; k >>= 8) w.push_back(static_cast<Index>((k & 0xff) - 1));
      std::reverse(w.begin(), w.end());
      bad.emplace_back(std::move(w), std::move(v));
    }
    record_failures(space, n, std::move(bad), report);
  }
  return report;
}

}  // namespace

JacobiReport check_jacobi(const LInftyAlgebra& alg, std::size_t n_max) {
  if (auto fast = check_jacobi_scaled(alg, n_max)) return *std::move(fast);

  const auto& space = alg.space();
  JacobiReport report;
  report.n_max = n_max;
  report.vacuous_above = alg.k_max() == 0 ? 0 : 2 * alg.k_max() - 2;

  struct Entry {
    const SymWord* word;
    const GradedVector* value;
  };
  std::vector<std::vector<Entry>> entries(alg.k_max() + 1);
  for (std::size_t a = 1; a <= alg.k_max(); ++a)
    for (const auto& [w, v] : alg.table(a)) entries[a].push_back({&w, &v});
  const auto containing = index_by_letter(entries, space.dim());

  // J[n][X] accumulates the identity's left side on the canonical word X.
  std::vector<std::unordered_map<std::vector<Index>, GradedVector, WordHash>> jac(n_max + 1);
  std::vector<Index> rest;
  Composite comp;
  for (std::size_t b = 1; b <= alg.k_max(); ++b) {
    for (const auto& inner : entries[b]) {
      const auto& s = inner.word->letters();
      const int y_degree = inner.word->total_degree(space) + 1;
      for (const auto& [y, vy] : inner.value->terms()) {
        for (const Entry* outer : containing[y]) {
          const std::size_t a = outer->word->arity();
          if (a + b < 2 || a + b - 2 > n_max) continue;
          if (!compose(space, s, y, y_degree, outer->word->letters(), rest, comp)) continue;
          Rational coeff = Rational(static_cast<unsigned long>(comp.count)) * vy;
          if (comp.negative) coeff = -coeff;
          GradedVector& acc = jac[a + b - 2][comp.word];
          for (const auto& [i, c] : outer->value->terms()) acc.add(i, coeff * c);
        }
      }
    }
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    report.words_evaluated += jac[n].size();
    std::vector<std::pair<std::vector<Index>, GradedVector>> bad;
    for (auto& [w, v] : jac[n])
      if (!v.is_zero()) bad.emplace_back(w, std::move(v));
    record_failures(space, n, std::move(bad), report);
  }
  return report;
}

GradedVector jacobi_identity_value(const LInftyAlgebra& alg, const std::vector<Index>& letters) {
  const auto& space = alg.space();
  const std::size_t m = letters.size();
  GradedVector total;
  if (m == 0) return total;
  std::vector<int> degrees;
  for (auto l : letters) degrees.push_back(space.degree(l));
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& sigma : unshuffles(i + 1, m - i - 1)) {
      const int eps = koszul_sign(sigma, degrees);
      std::vector<Index> inner_letters, outer_letters;
      for (std::size_t a = 0; a <= i; ++a) inner_letters.push_back(letters[sigma[a]]);
      for (std::size_t a = i + 1; a < m; ++a) outer_letters.push_back(letters[sigma[a]]);
      const GradedVector inner = alg.bracket_on_basis(inner_letters);
      if (inner.is_zero()) continue;
      std::vector<GradedVector> args{inner};
      for (auto l : outer_letters) args.push_back(GradedVector::basis(l));
      total.axpy(Rational(eps), eval_bracket(alg, args));
    }
  }
  return total;
}

namespace {

void require_degree_zero(const LInftyAlgebra& alg, const GradedVector& q, const char* who) {
  auto d = homogeneous_degree(q, alg.space());
  if (!q.is_zero() && (!d || *d != 0)) throw Error(std::string(who) + ": element must have degree 0");
}

// Sub-multisets R of a sorted word whose letters all lie in supp(q), with the weight
// q^R / Π r_ℓ! and the remaining letters.
void for_each_q_submultiset(const std::vector<Index>& word, const GradedVector& q,
                            const std::function<void(const Rational&, const std::vector<Index>&)>& f) {
  // Group letters into runs.
  std::vector<std::pair<Index, std::size_t>> runs;
  for (auto l : word) {
    if (!runs.empty() && runs.back().first == l) {
      ++runs.back().second;
    } else {
      runs.emplace_back(l, 1);
    }
  }
  std::vector<Rational> qc;
  for (const auto& r : runs) qc.push_back(q.coefficient(r.first));
  std::vector<Index> rest;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational weight) {
    if (pos == runs.size()) {
      f(weight, rest);
      return;
    }
    const auto [letter, mult] = runs[pos];
    const std::size_t max_take = sgn(qc[pos]) == 0 ? 0 : mult;
    Rational w = weight;
    for (std::size_t take = 0; take <= max_take; ++take) {
      if (take > 0) w *= qc[pos] / Rational(static_cast<unsigned long>(take));
      for (std::size_t r = take; r < mult; ++r) rest.push_back(letter);
      rec(pos + 1, w);
      rest.resize(rest.size() - (mult - take));
    }
  };
  rec(0, 1);
}

}  // namespace

GradedVector mc_residual(const LInftyAlgebra& alg, const GradedVector& q) {
  require_degree_zero(alg, q, "mc_residual");
  GradedVector out;
  for (std::size_t k = 1; k <= alg.k_max(); ++k)
    for (const auto& [w, v] : alg.table(k)) {
      Rational weight = 1;
      const auto& l = w.letters();
      bool ok = true;
      for (auto x : l)
        if (sgn(q.coefficient(x)) == 0) ok = false;
      if (!ok) continue;
      for (auto x : l) weight *= q.coefficient(x);
      weight *= multiplicity_weight(l);
      out.axpy(weight, v);
    }
  return out;
}

LInftyAlgebra twist(const LInftyAlgebra& alg, const GradedVector& q) {
  require_degree_zero(alg, q, "twist");
  std::vector<BracketEntry> entries;
  for (std::size_t k = 1; k <= alg.k_max(); ++k)
    for (const auto& [w, v] : alg.table(k)) {
      for_each_q_submultiset(w.letters(), q, [&](const Rational& weight, const std::vector<Index>& rest) {
        if (rest.empty()) return;
        BracketEntry e{rest, v};
        e.value *= weight;
        entries.push_back(std::move(e));
      });
    }
  return LInftyAlgebra(alg.space(), alg.k_max(), entries);
}

GradedSubspace::GradedSubspace(const GradedVectorSpace& space, const std::vector<GradedVector>& spanning)
    : ambient_(space.dim()) {
  for (int d : space.degrees()) {
    degrees_.push_back(d);
    coords_[d] = space.indices_of_degree(d);
  }
  std::map<int, std::vector<RVector>> per_degree;
  for (const auto& v : spanning) {
    if (v.is_zero()) continue;
    auto d = homogeneous_degree(v, space);
    if (!d) throw Error("GradedSubspace: spanning vector is not homogeneous");
    const auto& idx = coords_.at(*d);
    RVector local(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) local[i] = v.coefficient(idx[i]);
    per_degree[*d].push_back(std::move(local));
  }
  for (int d : degrees_) parts_.emplace(d, Subspace(coords_.at(d).size(), per_degree[d]));
}

GradedSubspace GradedSubspace::whole(const GradedVectorSpace& space) {
  std::vector<GradedVector> all;
  for (Index i = 0; i < space.dim(); ++i) all.push_back(GradedVector::basis(i));
  return GradedSubspace(space, all);
}

const Subspace& GradedSubspace::component(int degree) const {
  static const Subspace empty;
  auto it = parts_.find(degree);
  return it == parts_.end() ? empty : it->second;
}

const std::vector<Index>& GradedSubspace::coordinates(int degree) const {
  static const std::vector<Index> empty;
  auto it = coords_.find(degree);
  return it == coords_.end() ? empty : it->second;
}

bool GradedSubspace::contains(const GradedVector& v) const {
  std::map<int, RVector> split;
  for (const auto& [i, c] : v.terms()) {
    bool placed = false;
    for (const auto& [d, idx] : coords_) {
      auto it = std::lower_bound(idx.begin(), idx.end(), i);
      if (it != idx.end() && *it == i) {
        auto& local = split[d];
        if (local.empty()) local.resize(idx.size());
        local[static_cast<std::size_t>(it - idx.begin())] = c;
        placed = true;
        break;
      }
    }
    if (!placed) throw Error("GradedSubspace: vector outside the ambient space");
  }
  for (const auto& [d, local] : split)
    if (!component(d).contains(local)) return false;
  return true;
}

std::vector<GradedVector> GradedSubspace::basis() const {
  std::vector<GradedVector> out;
  for (int d : degrees_) {
    const auto& idx = coords_.at(d);
    for (const auto& b : component(d).basis()) {
      GradedVector v;
      for (std::size_t i = 0; i < idx.size(); ++i) v.add(idx[i], b[i]);
      out.push_back(std::move(v));
    }
  }
  return out;
}

RVector GradedSubspace::quotient_coordinates(int degree, const GradedVector& v) const {
  const auto& idx = coordinates(degree);
  RVector local(idx.size());
  for (const auto& [i, c] : v.terms()) {
    auto it = std::lower_bound(idx.begin(), idx.end(), i);
    if (it == idx.end() || *it != i) throw Error("quotient_coordinates: vector has the wrong degree");
    local[static_cast<std::size_t>(it - idx.begin())] = c;
  }
  return component(degree).quotient_coordinates(local);
}

GradedVector GradedSubspace::lift(int degree, const RVector& coords) const {
  const RVector local = component(degree).lift(coords);
  const auto& idx = coordinates(degree);
  GradedVector v;
  for (std::size_t i = 0; i < idx.size(); ++i) v.add(idx[i], local[i]);
  return v;
}

SubalgebraCheck is_subalgebra(const LInftyAlgebra& alg, const GradedSubspace& w) {
  const auto basis = w.basis();
  std::vector<bool> odd;
  for (const auto& b : basis) odd.push_back((*homogeneous_degree(b, alg.space()) & 1) != 0);
  SubalgebraCheck result;
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) -> bool {
    if (pick.size() == k) {
      std::vector<GradedVector> args;
      for (auto p : pick) args.push_back(basis[p]);
      GradedVector value = eval_bracket(alg, args);
      if (!w.contains(value)) {
        result.is_subalgebra = false;
        result.counterexample_args = std::move(args);
        result.counterexample_value = std::move(value);
        return false;
      }
      return true;
    }
    for (std::size_t i = start; i < basis.size(); ++i) {
      // A repeated odd argument gives a zero bracket.
      if (!pick.empty() && pick.back() == i && odd[i]) continue;
      pick.push_back(i);
      const bool ok = rec(i, k);
      pick.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (std::size_t k = 1; k <= alg.k_max(); ++k)
    if (!rec(0, k)) break;
  return result;
}

RMatrix unary_matrix(const LInftyAlgebra& alg, int degree) {
  const auto& space = alg.space();
  const auto src = space.indices_of_degree(degree);
  const auto dst = space.indices_of_degree(degree + 1);
  RMatrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const GradedVector v = alg.bracket_on_basis({src[c]});
    for (const auto& [i, coeff] : v.terms()) {
      auto it = std::lower_bound(dst.begin(), dst.end(), i);
      m(static_cast<std::size_t>(it - dst.begin()), c) = coeff;
    }
  }
  return m;
}

ChainComplex differential_complex(const LInftyAlgebra& alg) {
  const auto degs = alg.space().degrees();
  if (degs.empty()) return ChainComplex();
  const int lo = *degs.begin(), hi = *degs.rbegin();
  std::vector<std::size_t> dims;
  std::vector<RMatrix> maps;
  for (int d = lo; d <= hi; ++d) dims.push_back(alg.space().dim_of_degree(d));
  for (int d = lo; d < hi; ++d) maps.push_back(unary_matrix(alg, d));
  return ChainComplex(lo, std::move(dims), std::move(maps));
}

ChainComplex quotient_complex(const LInftyAlgebra& alg, const GradedSubspace& w, const GradedVector& q) {
  require_degree_zero(alg, q, "quotient_complex");
  if (!w.contains(q)) throw Error("quotient_complex: Q does not lie in W");
  const GradedVector residual = mc_residual(alg, q);
  if (!residual.is_zero()) throw Error("quotient_complex: Q is not a Maurer-Cartan element");
  const auto check = is_subalgebra(alg, w);
  if (!check.is_subalgebra) throw Error("quotient_complex: W is not an L-infinity subalgebra");
  const LInftyAlgebra twisted = twist(alg, q);
  const ChainComplex full = differential_complex(twisted);
  std::vector<Subspace> parts;
  for (int d = full.lowest_degree(); d <= full.highest_degree(); ++d) {
    const Subspace& c = w.component(d);
    parts.push_back(c.ambient_dim() == full.dim(d) ? c : Subspace(full.dim(d)));
  }
  return quotient_complex(full, parts);
}

FloatBrackets::FloatBrackets(const LInftyAlgebra& alg) {
  const auto& space = alg.space();
  for (int d : {-1, 0, 1}) {
    indices_[d] = space.indices_of_degree(d);
    for (std::size_t p = 0; p < indices_[d].size(); ++p) position_[d][indices_[d][p]] = p;
  }
  auto out_value = [&](const GradedVector& v, int degree) {
    std::vector<std::pair<std::size_t, double>> out;
    for (const auto& [i, c] : v.terms()) out.emplace_back(position_[degree].at(i), to_double(c));
    return out;
  };
  for (std::size_t k = 1; k <= alg.k_max(); ++k)
    for (const auto& [w, v] : alg.table(k)) {
      const auto& l = w.letters();
      std::size_t minus_one = 0, zero = 0;
      for (auto x : l) {
        if (space.degree(x) == 0) ++zero;
        if (space.degree(x) == -1) ++minus_one;
      }
      if (zero == l.size()) {
        Monomial m;
        for (auto x : l) m.q_letters.push_back(position_[0].at(x));
        m.weight = to_double(multiplicity_weight(l));
        m.value = out_value(v, 1);
        mc_terms_.push_back(std::move(m));
      } else if (minus_one == 1 && zero + 1 == l.size()) {
        Monomial m;
        std::vector<Index> q_only;
        for (auto x : l) {
          if (space.degree(x) == 0) {
            m.q_letters.push_back(position_[0].at(x));
            q_only.push_back(x);
          } else {
            m.x_letter = position_[-1].at(x);
          }
        }
        m.weight = to_double(multiplicity_weight(q_only));
        m.value = out_value(v, 0);
        unary_terms_.push_back(std::move(m));
      }
    }
}

std::size_t FloatBrackets::dim(int degree) const {
  auto it = indices_.find(degree);
  return it == indices_.end() ? 0 : it->second.size();
}

const std::vector<Index>& FloatBrackets::indices(int degree) const { return indices_.at(degree); }

std::vector<double> FloatBrackets::to_coords(int degree, const GradedVector& v) const {
  std::vector<double> out(dim(degree), 0.0);
  const auto& pos = position_.at(degree);
  for (const auto& [i, c] : v.terms()) {
    auto it = pos.find(i);
    if (it == pos.end()) throw Error("FloatBrackets: vector has the wrong degree");
    out[it->second] = to_double(c);
  }
  return out;
}

std::vector<double> FloatBrackets::to_coords(int degree, const std::vector<double>& full) const {
  const auto& idx = indices_.at(degree);
  std::vector<double> out(idx.size());
  for (std::size_t p = 0; p < idx.size(); ++p) out[p] = full.at(idx[p]);
  return out;
}

std::vector<double> FloatBrackets::mc_residual(const std::vector<double>& q) const {
  std::vector<double> out(dim(1), 0.0);
  for (const auto& m : mc_terms_) {
    double w = m.weight;
    for (auto p : m.q_letters) w *= q[p];
    if (w == 0.0) continue;
    for (const auto& [i, c] : m.value) out[i] += w * c;
  }
  return out;
}

std::vector<double> FloatBrackets::twisted_unary(const std::vector<double>& q, const std::vector<double>& x) const {
  std::vector<double> out(dim(0), 0.0);
  for (const auto& m : unary_terms_) {
    double w = m.weight * x[m.x_letter];
    for (auto p : m.q_letters) w *= q[p];
    if (w == 0.0) continue;
    for (const auto& [i, c] : m.value) out[i] += w * c;
  }
  return out;
}

}  // namespace dirac_stab
