#include "radhess/hessian.hpp"

#include <cmath>
#include <stdexcept>

namespace radhess {

namespace {

// (n-1)! / [(k-1)! (n-k)!], exact for the small orders used here.
double binom_n1_k1(int k, int n) {
  double num = 1.0, den = 1.0;
  for (int i = 1; i <= n - 1; ++i) num *= i;
  for (int i = 1; i <= k - 1; ++i) den *= i;
  for (int i = 1; i <= n - k; ++i) den *= i;
  return num / den;
}

double binom_n_k(int k, int n) {
  double num = 1.0, den = 1.0;
  for (int i = 1; i <= n; ++i) num *= i;
  for (int i = 1; i <= k; ++i) den *= i;
  for (int i = 1; i <= n - k; ++i) den *= i;
  return num / den;
}

// Three-point differentiation weights on arbitrary abscissae.
void deriv3(double x0, double x1, double x2, double f0, double f1, double f2,
            double at, double& d1, double& d2) {
  // Lagrange basis derivatives at `at`.
  double l0d = ((at - x1) + (at - x2)) / ((x0 - x1) * (x0 - x2));
  double l1d = ((at - x0) + (at - x2)) / ((x1 - x0) * (x1 - x2));
  double l2d = ((at - x0) + (at - x1)) / ((x2 - x0) * (x2 - x1));
  d1 = f0 * l0d + f1 * l1d + f2 * l2d;
  double l0dd = 2.0 / ((x0 - x1) * (x0 - x2));
  double l1dd = 2.0 / ((x1 - x0) * (x1 - x2));
  double l2dd = 2.0 / ((x2 - x0) * (x2 - x1));
  d2 = f0 * l0dd + f1 * l1dd + f2 * l2dd;
}

}  // namespace

RadialProfile with_fd_derivatives(RadialProfile p) {
  const Eigen::Index n = p.xi.size();
  if (n < 3) throw std::invalid_argument("profile needs at least 3 nodes for differences");
  if (p.grid.size() != n) throw std::invalid_argument("grid/value length mismatch");
  if (p.has_derivatives()) return p;

  p.dxi.resize(n);
  p.ddxi.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index j = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    deriv3(p.grid[j], p.grid[j + 1], p.grid[j + 2], p.xi[j], p.xi[j + 1], p.xi[j + 2],
           p.grid[i], p.dxi[i], p.ddxi[i]);
  }
  p.dxi[0] = 0.0;  // xi'(0) = 0 by radial symmetry
  return p;
}

Eigen::ArrayXd eigenvalues_radial(const RadialProfile& p, Eigen::Index i, int n) {
  if (n < 3) throw std::invalid_argument("dimension must be >= 3");
  if (i < 0 || i >= p.grid.size()) throw std::out_of_range("grid index");
  if (!p.has_derivatives()) throw std::invalid_argument("profile derivatives missing");
  Eigen::ArrayXd lambda(n);
  double r = p.grid[i];
  if (r == 0.0) {
    lambda.setConstant(p.ddxi[i]);
  } else {
    lambda.setConstant(p.dxi[i] / r);
    lambda[0] = p.ddxi[i];
  }
  return lambda;
}

double s_k(double dxi, double ddxi, double r, int k, int n) {
  if (n < 3 || k < 1 || k > n) throw std::invalid_argument("invalid (k, n) combination");
  if (r < 0.0) throw std::invalid_argument("negative radius");
  if (r == 0.0) return binom_n_k(k, n) * std::pow(ddxi, k);
  double c = binom_n1_k1(k, n);
  double q = dxi / r;
  return c * ddxi * std::pow(q, k - 1) + c * (double(n - k) / k) * std::pow(q, k);
}

ResidualReport pde_residual(const ProblemSpec& spec, const RadialProfile& u1,
                            const RadialProfile& u2) {
  if (u1.grid.size() != u2.grid.size() || (u1.grid != u2.grid).any())
    throw std::invalid_argument("profiles must share the grid");

  RadialProfile p1 = with_fd_derivatives(u1);
  RadialProfile p2 = with_fd_derivatives(u2);

  const Eigen::Index m = p1.grid.size();
  ResidualReport rep;
  rep.residual1.resize(m);
  rep.residual2.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double r = p1.grid[i];
    double s1 = s_k(p1.dxi[i], p1.ddxi[i], r, spec.k1, spec.n);
    double s2 = s_k(p2.dxi[i], p2.ddxi[i], r, spec.k2, spec.n);
    rep.residual1[i] = s1 + spec.a1.eval(r, spec.n) * std::pow(std::fabs(p1.dxi[i]), spec.k1) -
                       spec.p1.eval(r, spec.n) * spec.f1.eval(p2.xi[i], spec.n);
    rep.residual2[i] = s2 + spec.a2.eval(r, spec.n) * std::pow(std::fabs(p2.dxi[i]), spec.k2) -
                       spec.p2.eval(r, spec.n) * spec.f2.eval(p1.xi[i], spec.n);
    if (p1.dxi[i] < 0.0 || p2.dxi[i] < 0.0) rep.negative_derivative_warning = true;
  }
  rep.sup1 = rep.residual1.abs().maxCoeff();
  rep.sup2 = rep.residual2.abs().maxCoeff();
  return rep;
}

}  // namespace radhess
