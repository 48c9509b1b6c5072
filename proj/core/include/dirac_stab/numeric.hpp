#pragma once

#include <Eigen/Dense>

#include "dirac_stab/linalg.hpp"

namespace dirac_stab {

Eigen::MatrixXd to_eigen(const RMatrix& m);
Eigen::VectorXd to_eigen(const RVector& v);

/// e^A by scaling and squaring: A is scaled by 2^-s until its 1-norm is at most 1/2,
/// the exponential of the scaled matrix is summed to 13 Taylor terms, then squared s times.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

}  // namespace dirac_stab
