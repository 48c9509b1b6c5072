#include "document.hpp"

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace dirac_stab::cli {

using json = nlohmann::json;

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Linfty: return "linfty";
    case Kind::QuadraticLie: return "quadratic_lie";
    case Kind::DiracSplit: return "dirac_split";
    case Kind::PolyAlgebroid: return "poly_algebroid";
    case Kind::Germ: return "germ";
    case Kind::CartanDirac: return "cartan_dirac";
  }
  return "?";
}

namespace {

// A JSON value together with its pointer, for schema errors that say where.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError((path_.empty() ? std::string("/") : path_) + ": " + msg);
  }

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  // Requires an object whose keys all come from `allowed`.
  void fields(std::initializer_list<const char*> allowed) const {
    if (!j_.is_object()) fail("expected an object");
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }))
        at(it.key()).fail("unknown field");
  }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  Node at(const std::string& key) const {
    if (!j_.is_object()) fail("expected an object");
    if (!j_.contains(key)) fail("missing field \"" + key + "\"");
    return Node(j_.at(key), path_ + "/" + key);
  }
  std::vector<std::pair<std::string, Node>> entries() const {
    if (!j_.is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = j_.begin(); it != j_.end(); ++it) out.emplace_back(it.key(), Node(it.value(), path_ + "/" + it.key()));
    return out;
  }
  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array");
    return j_.size();
  }
  Node item(std::size_t i) const { return Node(j_.at(i), path_ + "/" + std::to_string(i)); }
  std::vector<Node> items() const {
    std::vector<Node> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(item(i));
    return out;
  }
  std::vector<Node> tuple(std::size_t n) const {
    if (size() != n) fail("expected an array of length " + std::to_string(n));
    return items();
  }

  std::string str() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }
  Rational rational() const {
    if (!j_.is_string()) fail("rationals are written as strings, \"p/q\" or \"p\"");
    try {
      return parse_rational(j_.get<std::string>());
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }
  std::size_t count() const {
    if (!j_.is_number_integer() || j_.get<long long>() < 0) fail("expected a nonnegative integer");
    return static_cast<std::size_t>(j_.get<long long>());
  }
  int integer() const {
    if (!j_.is_number_integer()) fail("expected an integer");
    return j_.get<int>();
  }
  // 1-based index in 1..bound, returned 0-based.
  std::size_t index(std::size_t bound) const {
    const std::size_t i = count();
    if (i < 1 || i > bound) fail("index " + std::to_string(i) + " outside 1.." + std::to_string(bound));
    return i - 1;
  }

 private:
  const json& j_;
  std::string path_;
};

// Library errors raised while assembling a value are reported at that value.
template <class F>
auto guarded(const Node& n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

RVector vector_of(const Node& n, std::size_t dim) {
  if (n.size() != dim) n.fail("expected " + std::to_string(dim) + " entries");
  RVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = n.item(i).rational();
  return v;
}

std::vector<RVector> vectors_of(const Node& n, std::size_t dim) {
  std::vector<RVector> out;
  for (const auto& it : n.items()) out.push_back(vector_of(it, dim));
  return out;
}

RMatrix matrix_of(const Node& n, std::size_t rows, std::size_t cols) {
  if (n.size() != rows) n.fail("expected " + std::to_string(rows) + " rows");
  RMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const RVector row = vector_of(n.item(r), cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

// Word from 1-based indices, with the sign of sorting them.
std::pair<ExtWord, int> word_of(const Node& n, std::size_t rank) {
  std::vector<std::size_t> idx;
  for (const auto& it : n.items()) idx.push_back(it.index(rank));
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) n.fail("repeated index in a wedge word");
      if (idx[a] > idx[b]) sign = -sign;
    }
  return {word_from_indices(idx), sign};
}

// [[[i, j, ...], "c"], ...]
ExtElement ext_of(const Node& n, std::size_t rank) {
  ExtElement e(rank);
  for (const auto& term : n.items()) {
    const auto t = term.tuple(2);
    const auto [w, sign] = word_of(t[0], rank);
    e.add(w, sign * t[1].rational());
  }
  return e;
}

// [[[a1, ..., am], "c"], ...]
Polynomial polynomial_of(const Node& n, std::size_t nvars) {
  Polynomial p(nvars);
  for (const auto& term : n.items()) {
    const auto t = term.tuple(2);
    if (t[0].size() != nvars) t[0].fail("expected " + std::to_string(nvars) + " exponents");
    Exponents e(nvars);
    for (std::size_t i = 0; i < nvars; ++i) e[i] = static_cast<unsigned>(t[0].item(i).count());
    p.add(e, t[1].rational());
  }
  return p;
}

// [[[i, j, ...], polynomial], ...]
PolySection section_of(const Node& n, std::size_t rank, std::size_t nvars) {
  PolySection s(rank, nvars);
  for (const auto& term : n.items()) {
    const auto t = term.tuple(2);
    const auto [w, sign] = word_of(t[0], rank);
    s.add(w, Rational(sign) * polynomial_of(t[1], nvars));
  }
  return s;
}

LieAlgebra lie_algebra_of(const Node& n) {
  n.fields({"preset", "dim", "structure_constants"});
  if (n.has("preset")) {
    const std::string p = n.at("preset").str();
    if (n.has("structure_constants")) n.at("structure_constants").fail("not allowed together with a preset");
    if (p == "abelian") return lie_algebras::abelian(n.at("dim").count());
    if (n.has("dim")) n.at("dim").fail("only the abelian preset takes a dimension");
    if (p == "su2") return lie_algebras::su2();
    if (p == "sl2") return lie_algebras::sl2();
    if (p == "aff1") return lie_algebras::aff1();
    if (p == "heisenberg") return lie_algebras::heisenberg();
    n.at("preset").fail("unknown preset \"" + p + "\" (abelian, su2, sl2, aff1, heisenberg)");
  }
  const std::size_t dim = n.at("dim").count();
  BracketTensor t(dim);
  if (n.has("structure_constants"))
    for (const auto& c : n.at("structure_constants").items()) {
      const auto f = c.tuple(4);
      const std::size_t i = f[0].index(dim), j = f[1].index(dim), k = f[2].index(dim);
      if (i == j) f[1].fail("[e_i, e_i] is zero");
      t.set_antisymmetric(i, j, k, t.at(i, j, k) + f[3].rational());
    }
  return guarded(n, [&] { return LieAlgebra(std::move(t)); });
}

// Ambient Courant algebroid: explicit bracket and pairing, or a twisted double.
QuadraticLieAlgebra ambient_of(const Node& doc) {
  if (doc.has("double")) {
    if (doc.has("dim") || doc.has("bracket") || doc.has("pairing"))
      doc.at("double").fail("give either \"double\" or \"dim\"/\"bracket\"/\"pairing\"");
    const Node d = doc.at("double");
    d.fields({"lie_algebra", "H", "cartan_metric"});
    const LieAlgebra g = lie_algebra_of(d.at("lie_algebra"));
    ExtElement h(g.dim());
    if (d.has("H") && d.has("cartan_metric")) d.fail("give at most one of \"H\" and \"cartan_metric\"");
    if (d.has("H")) h = ext_of(d.at("H"), g.dim());
    if (d.has("cartan_metric")) {
      const Node m = d.at("cartan_metric");
      h = guarded(m, [&] { return cartan_three_form(g, matrix_of(m, g.dim(), g.dim())); });
    }
    return guarded(d, [&] { return build_twisted_double(g, h); });
  }
  const std::size_t dim = doc.at("dim").count();
  BracketTensor t(dim);
  if (doc.has("bracket"))
    for (const auto& c : doc.at("bracket").items()) {
      const auto f = c.tuple(4);
      const std::size_t i = f[0].index(dim), j = f[1].index(dim), k = f[2].index(dim);
      t.at(i, j, k) += f[3].rational();
    }
  return QuadraticLieAlgebra(std::move(t), matrix_of(doc.at("pairing"), dim, dim));
}

GradedVector graded_of(const Node& n, const GradedVectorSpace& space) {
  GradedVector v;
  for (const auto& [label, c] : n.entries()) {
    const auto i = space.find(label);
    if (!i) c.fail("unknown basis label \"" + label + "\"");
    v.add(*i, c.rational());
  }
  return v;
}

LinftyDoc linfty_of(const Node& doc) {
  std::vector<GradedVectorSpace::BasisElement> basis;
  for (const auto& b : doc.at("basis").items()) {
    b.fields({"label", "degree"});
    basis.push_back({b.at("label").str(), b.at("degree").integer()});
  }
  const Node bn = doc.at("basis");
  GradedVectorSpace space = guarded(bn, [&] { return GradedVectorSpace(basis); });
  const std::size_t k_max = doc.at("k_max").count();
  std::vector<BracketEntry> entries;
  if (doc.has("brackets"))
    for (const auto& b : doc.at("brackets").items()) {
      b.fields({"args", "value"});
      BracketEntry e;
      for (const auto& a : b.at("args").items()) {
        const auto i = space.find(a.str());
        if (!i) a.fail("unknown basis label \"" + a.str() + "\"");
        e.letters.push_back(*i);
      }
      e.value = graded_of(b.at("value"), space);
      entries.push_back(std::move(e));
    }
  LinftyDoc d;
  d.algebra = guarded(doc, [&] { return LInftyAlgebra(space, k_max, entries); });
  if (doc.has("elements"))
    for (const auto& [name, v] : doc.at("elements").entries()) d.elements[name] = graded_of(v, space);
  if (doc.has("subalgebras"))
    for (const auto& [name, s] : doc.at("subalgebras").entries()) {
      std::vector<GradedVector> span;
      for (const auto& v : s.items()) span.push_back(graded_of(v, space));
      d.subalgebras[name] = guarded(s, [&] { return GradedSubspace(space, span); });
    }
  return d;
}

std::map<std::string, Subspace> subspaces_of(const Node& n, std::size_t dim) {
  std::map<std::string, Subspace> out;
  for (const auto& [name, s] : n.entries()) out.emplace(name, Subspace(dim, vectors_of(s, dim)));
  return out;
}

AlgebroidDoc algebroid_of(const Node& doc) {
  const std::size_t rank = doc.at("rank").count(), nvars = doc.at("nvars").count();
  if (rank == 0 || rank > 16) doc.at("rank").fail("rank must be in 1..16");
  std::vector<VectorField> anchor(rank, VectorField(nvars, Polynomial(nvars)));
  if (doc.has("anchor"))
    for (const auto& a : doc.at("anchor").items()) {
      const auto f = a.tuple(3);
      const std::size_t i = f[0].index(rank), k = f[1].index(nvars);
      anchor[i][k] += polynomial_of(f[2], nvars);
    }
  std::vector<PolyStructureConstant> constants;
  if (doc.has("structure"))
    for (const auto& c : doc.at("structure").items()) {
      const auto f = c.tuple(4);
      constants.push_back({f[0].index(rank), f[1].index(rank), f[2].index(rank), polynomial_of(f[3], nvars)});
    }
  const int cap = doc.has("degree_cap") ? doc.at("degree_cap").integer() : PolyLieAlgebroid::default_degree_cap;
  AlgebroidDoc d;
  d.algebroid = guarded(doc, [&] { return PolyLieAlgebroid(nvars, anchor, constants, cap); });
  d.pi = doc.has("pi") ? section_of(doc.at("pi"), rank, nvars) : PolySection(rank, nvars);
  d.h = doc.has("H") ? section_of(doc.at("H"), rank, nvars) : PolySection(rank, nvars);
  if (!d.pi.is_zero() && d.pi.degree() != 2) doc.at("pi").fail("pi must be a bivector");
  if (!d.h.is_zero() && d.h.degree() != 3) doc.at("H").fail("H must be a 3-form");
  guarded(doc, [&] {
    d.algebroid.enforce(d.pi, "pi");
    d.algebroid.enforce(d.h, "H");
    return 0;
  });
  if (doc.has("point")) d.point = vector_of(doc.at("point"), nvars);
  return d;
}

Document build(const json& j) {
  const Node doc(j, "");
  if (!j.is_object()) doc.fail("expected an object");
  const std::string kind = doc.at("kind").str();
  Document d;
  if (doc.has("name")) d.name = doc.at("name").str();
  if (kind == "linfty") {
    doc.fields({"kind", "name", "description", "basis", "k_max", "brackets", "elements", "subalgebras"});
    d.kind = Kind::Linfty;
    d.linfty = linfty_of(doc);
  } else if (kind == "quadratic_lie") {
    doc.fields({"kind", "name", "description", "double", "dim", "bracket", "pairing", "subspaces"});
    d.kind = Kind::QuadraticLie;
    QuadraticDoc q{ambient_of(doc), {}};
    if (doc.has("subspaces")) q.subspaces = subspaces_of(doc.at("subspaces"), q.algebra.dim());
    d.quadratic = std::move(q);
  } else if (kind == "dirac_split") {
    doc.fields({"kind", "name", "description", "double", "dim", "bracket", "pairing", "dirac", "complement", "forms",
                "ideals"});
    d.kind = Kind::DiracSplit;
    SplitDoc s;
    s.ambient = ambient_of(doc);
    const std::size_t dim = s.ambient.dim();
    s.dirac = Subspace(dim, vectors_of(doc.at("dirac"), dim));
    if (2 * s.dirac.dim() != dim) doc.at("dirac").fail("a Dirac subspace has half the ambient dimension");
    if (doc.has("complement")) s.complement = Subspace(dim, vectors_of(doc.at("complement"), dim));
    const std::size_t rank = s.dirac.dim();
    if (doc.has("forms"))
      for (const auto& [name, f] : doc.at("forms").entries()) s.forms[name] = ext_of(f, rank);
    if (doc.has("ideals")) s.ideals = subspaces_of(doc.at("ideals"), rank);
    d.split = std::move(s);
  } else if (kind == "poly_algebroid") {
    doc.fields({"kind", "name", "description", "rank", "nvars", "degree_cap", "anchor", "structure", "pi", "H",
                "point"});
    d.kind = Kind::PolyAlgebroid;
    d.algebroid = algebroid_of(doc);
  } else if (kind == "germ") {
    doc.fields({"kind", "name", "description", "pairing", "a_basis", "lie_algebra", "anchor_kernel"});
    d.kind = Kind::Germ;
    const LieAlgebra g = lie_algebra_of(doc.at("lie_algebra"));
    const std::size_t dim = 2 * g.dim();
    const RMatrix pairing = matrix_of(doc.at("pairing"), dim, dim);
    const auto a = vectors_of(doc.at("a_basis"), dim);
    const Subspace kernel(dim, vectors_of(doc.at("anchor_kernel"), dim));
    d.germ = guarded(doc, [&] { return FixedPointGerm(pairing, a, g, kernel); });
  } else if (kind == "cartan_dirac") {
    doc.fields({"kind", "name", "description", "lie_algebra", "metric"});
    d.kind = Kind::CartanDirac;
    CartanDiracDoc c{lie_algebra_of(doc.at("lie_algebra")), {}};
    c.metric = matrix_of(doc.at("metric"), c.g.dim(), c.g.dim());
    d.cartan = std::move(c);
  } else {
    doc.at("kind").fail("unknown kind \"" + kind +
                        "\" (linfty, quadratic_lie, dirac_split, poly_algebroid, germ, cartan_dirac)");
  }
  return d;
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset just past the offending character.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (const auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  return build(j);
}

std::vector<Rational> parse_point(const std::string& text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("--point: empty coordinate");
    out.push_back(parse_rational(item.substr(b, e - b + 1)));
  }
  return out;
}

}  // namespace dirac_stab::cli
