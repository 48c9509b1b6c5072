#include "dirac_stab/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace dirac_stab {

double max_norm(const DVector& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

namespace {

bool all_finite(const DVector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void axpy(DVector& y, double a, const DVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

FlowResult gauge_flow(const FloatBrackets& fb, const DVector& q, const DVector& x, double t_end, double step,
                      std::size_t record_every) {
  if (!(step > 0)) throw Error("gauge_flow: step must be positive");
  if (!(t_end >= 0)) throw Error("gauge_flow: t_end must be nonnegative");
  if (q.size() != fb.dim(0) || x.size() != fb.dim(-1)) throw Error("gauge_flow: coordinate size mismatch");
  if (record_every == 0) record_every = 1;
  FlowResult r;
  DVector state = q;
  auto record = [&](double t) {
    r.times.push_back(t);
    r.path.push_back(state);
    r.mc_residual_norms.push_back(max_norm(fb.mc_residual(state)));
  };
  record(0);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / step - 1e-9));
  double t = 0;
  for (std::size_t s = 0; s < steps; ++s) {
    const double h = std::min(step, t_end - t);
    const DVector k1 = fb.twisted_unary(state, x);
    DVector tmp = state;
    axpy(tmp, h / 2, k1);
    const DVector k2 = fb.twisted_unary(tmp, x);
    tmp = state;
    axpy(tmp, h / 2, k2);
    const DVector k3 = fb.twisted_unary(tmp, x);
    tmp = state;
    axpy(tmp, h, k3);
    const DVector k4 = fb.twisted_unary(tmp, x);
    DVector next = state;
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (!all_finite(next)) {
      r.ok = false;
      r.last_valid_t = t;
      r.message = "non-finite value in gauge flow after t = " + std::to_string(t);
      break;
    }
    state = std::move(next);
    t = (s + 1 == steps) ? t_end : t + h;
    if ((s + 1) % record_every == 0 || s + 1 == steps) record(t);
  }
  if (r.ok) r.last_valid_t = t;
  r.endpoint = state;
  return r;
}

FlowResult gauge_flow(const LInftyAlgebra& alg, const GradedVector& q, const GradedVector& x, double t_end,
                      double step, std::size_t record_every) {
  if (!q.is_zero() && homogeneous_degree(q, alg.space()) != 0) throw Error("gauge_flow: Q must have degree 0");
  if (!x.is_zero() && homogeneous_degree(x, alg.space()) != -1) throw Error("gauge_flow: X must have degree -1");
  const FloatBrackets fb(alg);
  return gauge_flow(fb, fb.to_coords(0, q), fb.to_coords(-1, x), t_end, step, record_every);
}

FloatSplitting::FloatSplitting(const GradedSubspace& w, int degree) {
  const Subspace& s = w.component(degree);
  ambient_ = w.coordinates(degree).size();
  pivots_ = s.pivots();
  complement_ = s.complement_coordinates();
  if (s.ambient_dim() != ambient_) {
    // Degree absent from the space.
    complement_.clear();
    for (std::size_t i = 0; i < ambient_; ++i) complement_.push_back(i);
  }
  for (const auto& b : s.basis()) {
    DVector d(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) d[i] = to_double(b[i]);
    basis_.push_back(std::move(d));
  }
}

DVector FloatSplitting::quotient(const DVector& x) const {
  DVector r = x;
  for (std::size_t i = 0; i < basis_.size(); ++i) axpy(r, -r[pivots_[i]], basis_[i]);
  DVector out(complement_.size());
  for (std::size_t i = 0; i < complement_.size(); ++i) out[i] = r[complement_[i]];
  return out;
}

DVector FloatSplitting::lift(const DVector& coords) const {
  if (coords.size() != complement_.size()) throw Error("FloatSplitting::lift: dimension mismatch");
  DVector out(ambient_, 0.0);
  for (std::size_t i = 0; i < complement_.size(); ++i) out[complement_[i]] = coords[i];
  return out;
}

GaugeSetting::GaugeSetting(const LInftyAlgebra& alg, GradedSubspace w, double step)
    : alg_(alg), w_(std::move(w)), fb_(alg), step_(step) {
  for (int d : {-1, 0, 1}) split_.emplace(d, FloatSplitting(w_, d));
}

const FloatSplitting& GaugeSetting::splitting(int degree) const { return split_.at(degree); }

FlowResult GaugeSetting::flow_from(const DVector& q_prime, const DVector& v) const {
  return gauge_flow(fb_, q_prime, splitting(-1).lift(v), 1.0, step_, std::numeric_limits<std::size_t>::max());
}

DVector GaugeSetting::ev_map(const DVector& q_prime, const DVector& v) const {
  const FlowResult f = flow_from(q_prime, v);
  if (!f.ok) throw Error("ev_map: " + f.message);
  return splitting(0).quotient(f.endpoint);
}

DVector GaugeSetting::r_map(const DVector& v, const DVector& q_prime, const DVector& y_class) const {
  const FlowResult f = flow_from(q_prime, v);
  if (!f.ok) throw Error("r_map: " + f.message);
  const DVector& x = f.endpoint;
  DVector y = x;
  axpy(y, -1.0, splitting(0).lift(splitting(0).quotient(x)));
  axpy(y, 1.0, splitting(0).lift(y_class));
  return splitting(1).quotient(fb_.mc_residual(y));
}

std::vector<DVector> GaugeSetting::quotient_differential(const GradedVector& q, int degree) const {
  const ChainComplex c = quotient_complex(alg_, w_, q);
  const RMatrix d = c.differential(degree);
  std::vector<DVector> rows(d.rows(), DVector(d.cols()));
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) rows[i][j] = to_double(d(i, j));
  return rows;
}

RectifyResult rectify(const GaugeSetting& setting, const GradedVector& q, const DVector& q_prime,
                      const RectifyOptions& options) {
  RectifyResult result;
  const ChainComplex c = quotient_complex(setting.algebra(), setting.subalgebra(), q);
  const auto h0 = c.cohomology(0);
  if (h0.dim != 0) {
    result.message = "refused: H^0(V/W) has dimension " + std::to_string(h0.dim);
    return result;
  }
  // Parameters: coordinate complement of ker(μ̄_1^Q) in V^{-1}/W^{-1}.
  const RMatrix d = c.differential(-1);
  const Subspace kernel(d.cols(), kernel_basis(d));
  const auto& free = kernel.complement_coordinates();
  const std::size_t nv = d.cols(), np = free.size();
  auto param_to_v = [&](const Eigen::VectorXd& u) {
    DVector v(nv, 0.0);
    for (std::size_t i = 0; i < np; ++i) v[free[i]] = u(static_cast<Eigen::Index>(i));
    return v;
  };
  auto to_eigen_vec = [](const DVector& v) {
    Eigen::VectorXd e(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
    return e;
  };

  Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(np));
  try {
    DVector f = setting.ev_map(q_prime, param_to_v(u));
    for (std::size_t it = 0;; ++it) {
      result.trace.push_back(max_norm(f));
      result.iterations = it;
      if (result.trace.back() <= options.tol) break;
      if (it >= options.max_iter) {
        result.message = "no convergence within " + std::to_string(options.max_iter) + " Newton iterations";
        result.v = param_to_v(u);
        result.ev_residual = result.trace.back();
        return result;
      }
      if (it > 2 && result.trace.back() > 10 * result.trace.front()) {
        result.message = "left the convergence basin (residual grew from " + std::to_string(result.trace.front()) +
                         " to " + std::to_string(result.trace.back()) + ")";
        result.v = param_to_v(u);
        result.ev_residual = result.trace.back();
        return result;
      }
      Eigen::MatrixXd jac(static_cast<Eigen::Index>(f.size()), static_cast<Eigen::Index>(np));
      for (std::size_t j = 0; j < np; ++j) {
        Eigen::VectorXd up = u, um = u;
        up(static_cast<Eigen::Index>(j)) += options.fd_step;
        um(static_cast<Eigen::Index>(j)) -= options.fd_step;
        const Eigen::VectorXd col = (to_eigen_vec(setting.ev_map(q_prime, param_to_v(up))) -
                                     to_eigen_vec(setting.ev_map(q_prime, param_to_v(um)))) /
                                    (2 * options.fd_step);
        jac.col(static_cast<Eigen::Index>(j)) = col;
      }
      const Eigen::VectorXd delta = jac.completeOrthogonalDecomposition().solve(-to_eigen_vec(f));
      u += delta;
      f = setting.ev_map(q_prime, param_to_v(u));
    }
  } catch (const Error& e) {
    result.message = std::string("gauge flow failed: ") + e.what();
    result.v = param_to_v(u);
    return result;
  }
  result.v = param_to_v(u);
  const FlowResult flow = setting.flow_from(q_prime, result.v);
  result.endpoint = flow.endpoint;
  result.ev_residual = max_norm(setting.splitting(0).quotient(flow.endpoint));
  result.mc_residual = max_norm(setting.brackets().mc_residual(flow.endpoint));
  if (result.ev_residual > options.tol || result.mc_residual > options.tol) {
    result.message = "converged class but the endpoint fails the tolerance check (ev " +
                     std::to_string(result.ev_residual) + ", MC " + std::to_string(result.mc_residual) + ")";
    return result;
  }
  result.success = true;
  result.message = "rectified in " + std::to_string(result.iterations) + " iterations";
  return result;
}

}  // namespace dirac_stab
