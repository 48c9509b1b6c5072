#include "dirac_stab/chain_complex.hpp"

namespace dirac_stab {

ChainComplex::ChainComplex(int lowest_degree, std::vector<std::size_t> dims,
                           std::vector<RMatrix> differentials)
    : lo_(lowest_degree), dims_(std::move(dims)), d_(std::move(differentials)) {
  if (dims_.empty()) {
    if (!d_.empty()) throw Error("ChainComplex: differentials without spaces");
    return;
  }
  if (d_.size() + 1 != dims_.size()) throw Error("ChainComplex: need one differential between consecutive spaces");
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (d_[k].rows() != dims_[k + 1] || d_[k].cols() != dims_[k])
      throw Error("ChainComplex: differential has the wrong shape");
  }
  for (std::size_t k = 0; k + 1 < d_.size(); ++k) {
    if (!(d_[k + 1] * d_[k]).is_zero())
      throw Error("ChainComplex: d∘d != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
  }
}

std::size_t ChainComplex::dim(int degree) const {
  if (degree < lo_ || degree > highest_degree()) return 0;
  return dims_[static_cast<std::size_t>(degree - lo_)];
}

RMatrix ChainComplex::differential(int degree) const {
  if (degree >= lo_ && degree < highest_degree()) return d_[static_cast<std::size_t>(degree - lo_)];
  return RMatrix(dim(degree + 1), dim(degree));
}

std::size_t ChainComplex::rank_of(int degree) const {
  if (degree < lo_ || degree >= highest_degree()) return 0;
  return rank(d_[static_cast<std::size_t>(degree - lo_)]);
}

CohomologyGroup ChainComplex::cohomology(int degree) const {
  CohomologyGroup h;
  h.degree = degree;
  const std::size_t n = dim(degree);
  if (n == 0) return h;
  const RMatrix before = differential(degree - 1);
  std::vector<RVector> image;
  for (std::size_t c = 0; c < before.cols(); ++c) image.push_back(before.column(c));
  Subspace boundaries(n, image);
  Subspace running = boundaries;
  std::vector<RVector> spanning = boundaries.basis();
  for (const auto& z : kernel_basis(differential(degree))) {
    if (running.contains(z)) continue;
    spanning.push_back(z);
    running = Subspace(n, spanning);
    h.representatives.push_back(boundaries.reduce(z));
  }
  h.dim = h.representatives.size();
  return h;
}

ChainComplex quotient_complex(const ChainComplex& c, const std::vector<Subspace>& sub) {
  const int lo = c.lowest_degree();
  const int hi = c.highest_degree();
  if (sub.size() != static_cast<std::size_t>(hi - lo + 1))
    throw Error("quotient_complex: need one subspace per degree");
  std::vector<std::size_t> dims;
  std::vector<RMatrix> maps;
  for (int k = lo; k <= hi; ++k) {
    const auto& s = sub[static_cast<std::size_t>(k - lo)];
    if (s.ambient_dim() != c.dim(k)) throw Error("quotient_complex: subspace in the wrong ambient space");
    dims.push_back(s.codim());
  }
  for (int k = lo; k < hi; ++k) {
    const auto& s = sub[static_cast<std::size_t>(k - lo)];
    const auto& t = sub[static_cast<std::size_t>(k + 1 - lo)];
    const RMatrix d = c.differential(k);
    for (const auto& v : s.basis()) {
      if (!t.contains(d.apply(v)))
        throw Error("quotient_complex: differential does not preserve the subcomplex");
    }
    RMatrix q(t.codim(), s.codim());
    for (std::size_t j = 0; j < s.codim(); ++j) {
      RVector e(s.codim());
      e[j] = 1;
      const RVector image = t.quotient_coordinates(d.apply(s.lift(e)));
      for (std::size_t i = 0; i < image.size(); ++i) q(i, j) = image[i];
    }
    maps.push_back(std::move(q));
  }
  return ChainComplex(lo, std::move(dims), std::move(maps));
}

ChainComplex restrict_complex(const ChainComplex& c, const std::vector<Subspace>& sub) {
  const int lo = c.lowest_degree();
  const int hi = c.highest_degree();
  if (sub.size() != static_cast<std::size_t>(hi - lo + 1))
    throw Error("restrict_complex: need one subspace per degree");
  std::vector<std::size_t> dims;
  std::vector<RMatrix> maps;
  for (const auto& s : sub) dims.push_back(s.dim());
  for (int k = lo; k < hi; ++k) {
    const auto& s = sub[static_cast<std::size_t>(k - lo)];
    const auto& t = sub[static_cast<std::size_t>(k + 1 - lo)];
    const RMatrix d = c.differential(k);
    RMatrix r(t.dim(), s.dim());
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const RVector image = d.apply(s.basis()[j]);
      if (!t.contains(image)) throw Error("restrict_complex: differential leaves the subcomplex");
      // Reduced basis: coordinates are the entries at the pivot columns.
      for (std::size_t i = 0; i < t.dim(); ++i) r(i, j) = image[t.pivots()[i]];
    }
    maps.push_back(std::move(r));
  }
  return ChainComplex(lo, std::move(dims), std::move(maps));
}

}  // namespace dirac_stab
