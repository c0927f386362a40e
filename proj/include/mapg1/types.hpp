#pragma once

#include <complex>
#include <Eigen/Core>

namespace mapg1 {

using cplx = std::complex<double>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Root clustering metric used throughout: two roots are considered equal
// when |r1 - r2| < tol * (1 + |r1|).
inline constexpr double kRootClusterTol = 1e-7;

inline bool roots_coincide(cplx a, cplx b, double tol = kRootClusterTol) {
  return std::abs(a - b) < tol * (1.0 + std::abs(a));
}

}  // namespace mapg1
