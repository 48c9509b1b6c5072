#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dirac_stab/linfty.hpp"

namespace dirac_stab {

using DVector = std::vector<double>;

struct FlowResult {
  std::vector<double> times;    // recorded grid, starting at 0
  std::vector<DVector> path;    // Q_t in V^0 coordinates (increasing basis index)
  DVector endpoint;             // Q^X
  std::vector<double> mc_residual_norms;  // max-norm of the MC residual at each recorded time
  bool ok = true;
  double last_valid_t = 0;
  std::string message;
};

/// Classical RK4 for dQ_t/dt = μ_1^{Q_t}(X), Q_0 = Q, with a fixed step (the last step is
/// shortened to land on t_end). Records every `record_every`-th step plus the endpoint.
FlowResult gauge_flow(const FloatBrackets& fb, const DVector& q, const DVector& x, double t_end = 1.0,
                      double step = 1e-3, std::size_t record_every = 1);
FlowResult gauge_flow(const LInftyAlgebra& alg, const GradedVector& q, const GradedVector& x, double t_end = 1.0,
                      double step = 1e-3, std::size_t record_every = 1);

double max_norm(const DVector& v);

/// Float view of the fixed splitting V^d = W^d ⊕ span(non-pivot coordinates).
class FloatSplitting {
 public:
  FloatSplitting() = default;
  FloatSplitting(const GradedSubspace& w, int degree);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t codim() const { return complement_.size(); }
  DVector quotient(const DVector& x) const;
  DVector lift(const DVector& coords) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<std::size_t> pivots_, complement_;
  std::vector<DVector> basis_;
};

/// The data of the transversality argument: an algebra, a subalgebra W and its
/// splittings σ_{-1}, σ_0, σ_1 as float maps.
class GaugeSetting {
 public:
  GaugeSetting(const LInftyAlgebra& alg, GradedSubspace w, double step = 1e-3);

  const LInftyAlgebra& algebra() const { return alg_; }
  const GradedSubspace& subalgebra() const { return w_; }
  const FloatBrackets& brackets() const { return fb_; }
  const FloatSplitting& splitting(int degree) const;
  double step() const { return step_; }

  /// (Q')^{σ_{-1}(v)} + W^0, in V^0/W^0 coordinates. Throws Error when the flow fails.
  DVector ev_map(const DVector& q_prime, const DVector& v) const;
  /// Flow endpoint (Q')^{σ_{-1}(v)} in V^0 coordinates.
  FlowResult flow_from(const DVector& q_prime, const DVector& v) const;
  /// Σ 1/i! μ_i((X − σ_0(X̄)) + σ_0(Ȳ), …) + W^1 with X = (Q')^{σ_{-1}(v)}.
  DVector r_map(const DVector& v, const DVector& q_prime, const DVector& y_class) const;

  /// Exact μ̄_1^Q from degree `degree` of V/W, converted to double.
  std::vector<DVector> quotient_differential(const GradedVector& q, int degree) const;

 private:
  LInftyAlgebra alg_;
  GradedSubspace w_;
  FloatBrackets fb_;
  std::map<int, FloatSplitting> split_;
  double step_;
};

struct RectifyOptions {
  double tol = 1e-8;
  std::size_t max_iter = 20;
  double fd_step = 1e-4;
};

struct RectifyResult {
  bool success = false;
  std::string message;
  DVector v;              // class in V^{-1}/W^{-1}
  DVector endpoint;       // Q'' = (Q')^{σ_{-1}(v)} in V^0 coordinates
  double ev_residual = 0; // max-norm of the W^0-class of Q''
  double mc_residual = 0; // max-norm of the MC residual of Q''
  std::vector<double> trace;  // ev residual per iteration
  std::size_t iterations = 0;
};

/// Newton (Gauss-Newton with central finite-difference Jacobian) for ev_{Q'}(v) = 0 with v
/// restricted to the coordinate complement of ker(μ̄_1^Q) in V^{-1}/W^{-1}. Refuses when
/// H^0(V/W, μ̄_1^Q) ≠ 0.
RectifyResult rectify(const GaugeSetting& setting, const GradedVector& q, const DVector& q_prime,
                      const RectifyOptions& options = {});

}  // namespace dirac_stab
