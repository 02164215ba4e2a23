#ifndef RADHESS_HESSIAN_HPP
#define RADHESS_HESSIAN_HPP

#include <Eigen/Core>
#include <utility>

#include "radhess/problem.hpp"

namespace radhess {

// A radial C^2 profile xi sampled on a strictly increasing grid starting at
// r=0, with xi'(0) = 0. Derivative arrays may be empty; callers that need
// them fill in second-order finite differences via with_fd_derivatives().
struct RadialProfile {
  Eigen::ArrayXd grid;
  Eigen::ArrayXd xi;
  Eigen::ArrayXd dxi;
  Eigen::ArrayXd ddxi;

  bool has_derivatives() const {
    return dxi.size() == xi.size() && ddxi.size() == xi.size();
  }
};

// Fills dxi/ddxi (when absent) with second-order differences: central on
// the interior, one-sided at the boundary, general three-point stencils so
// non-uniform grids work too. dxi[0] is pinned to 0.
RadialProfile with_fd_derivatives(RadialProfile p);

// Eigenvalues of D^2 u at grid node i for u(x) = xi(|x|):
// (xi'', xi'/r, ..., xi'/r) for r > 0 and (xi''(0), ..., xi''(0)) at r = 0.
Eigen::ArrayXd eigenvalues_radial(const RadialProfile& p, Eigen::Index i, int n);

// The radial k-Hessian scalar: for r > 0
//   C(n-1,k-1) * xi'' * (xi'/r)^(k-1) + C(n-1,k-1) * (n-k)/k * (xi'/r)^k,
// and C(n,k) * xi''^k at r = 0 (where the dxi argument is ignored).
double s_k(double dxi, double ddxi, double r, int k, int n);

struct ResidualReport {
  Eigen::ArrayXd residual1;
  Eigen::ArrayXd residual2;
  double sup1 = 0.0;
  double sup2 = 0.0;
  bool negative_derivative_warning = false;  // some u' < 0 on the grid
};

// Residuals of the full system at every node:
//   S_k1(lambda(D^2 u1)) + a1(r)|u1'|^k1 - p1(r) f1(u2(r))   (and symmetric).
// Profiles must share the grid; derivatives are finite-differenced if absent.
ResidualReport pde_residual(const ProblemSpec& spec, const RadialProfile& u1,
                            const RadialProfile& u2);

}  // namespace radhess

#endif
