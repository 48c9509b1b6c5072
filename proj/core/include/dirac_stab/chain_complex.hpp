#pragma once

#include <cstddef>
#include <vector>

#include "dirac_stab/linalg.hpp"

namespace dirac_stab {

struct CohomologyGroup {
  int degree = 0;
  std::size_t dim = 0;
  std::vector<RVector> representatives;  // cocycles reduced modulo coboundaries
};

/// Cochain complex C^lo → … → C^hi of finite-dimensional Q-spaces; d² = 0 is checked on
/// construction. Degrees outside [lo, hi] are zero spaces.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// `differentials[k]` maps degree lo+k to lo+k+1 (dims[k+1] × dims[k]).
  ChainComplex(int lowest_degree, std::vector<std::size_t> dims, std::vector<RMatrix> differentials);

  int lowest_degree() const { return lo_; }
  int highest_degree() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int degree) const;
  /// Differential leaving `degree` (possibly a 0×k or k×0 matrix at the ends).
  RMatrix differential(int degree) const;

  std::size_t rank_of(int degree) const;
  std::size_t kernel_dim(int degree) const { return dim(degree) - rank_of(degree); }
  CohomologyGroup cohomology(int degree) const;

 private:
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<RMatrix> d_;
};

/// Induced complex on C/S for a subcomplex S (one subspace per degree of C). Quotient
/// coordinates are the non-pivot coordinates of each S. Throws if d(S) ⊄ S.
ChainComplex quotient_complex(const ChainComplex& c, const std::vector<Subspace>& sub);

/// Restriction of C to a subcomplex, in the reduced bases of the subspaces.
ChainComplex restrict_complex(const ChainComplex& c, const std::vector<Subspace>& sub);

}  // namespace dirac_stab
