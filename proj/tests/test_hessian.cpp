#include <doctest.h>

#include <cmath>
#include <random>

#include "radhess/hessian.hpp"

using namespace radhess;

namespace {

double choose(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}

// Sum of all k x k principal minors of diag(lambda): the elementary symmetric
// polynomial e_k, built by the product-polynomial recurrence.
double minor_sum(const Eigen::ArrayXd& lambda, int k) {
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    for (int j = std::min<int>(k, int(i) + 1); j >= 1; --j)
      e[j] += lambda[i] * e[j - 1];
  return e[k];
}

}  // namespace

TEST_CASE("quadratic profile: s_k(c r^2/2) = C(n,k) c^k for all orders") {
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; k <= n; ++k)
      for (double c : {1.0, 2.0}) {
        // r > 0 branch
        double r = 1.7;
        double v = s_k(c * r, c, r, k, n);
        CHECK(v == doctest::Approx(choose(n, k) * std::pow(c, k)).epsilon(1e-12));
        // origin branch
        double v0 = s_k(0.0, c, 0.0, k, n);
        CHECK(v0 == doctest::Approx(choose(n, k) * std::pow(c, k)).epsilon(1e-12));
      }
}

TEST_CASE("k=1 is the radial Laplacian, k=n the determinant") {
  int n = 5;
  double dxi = 0.7, ddxi = -0.3, r = 2.0;
  CHECK(s_k(dxi, ddxi, r, 1, n) == doctest::Approx(ddxi + (n - 1) * dxi / r));
  CHECK(s_k(dxi, ddxi, r, n, n) ==
        doctest::Approx(ddxi * std::pow(dxi / r, n - 1)).epsilon(1e-12));
}

TEST_CASE("scalar formula equals the principal-minor sum of the eigenvalues") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> val(-2.0, 2.0), rad(0.1, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 3 + int(rng() % 6);
    int k = 1 + int(rng() % n);
    RadialProfile p;
    p.grid = Eigen::ArrayXd::LinSpaced(3, 0.0, 2.0 * rad(rng));
    p.grid[1] = rad(rng) * 0.4;
    std::sort(p.grid.data(), p.grid.data() + 3);
    p.xi = Eigen::ArrayXd::Zero(3);
    p.dxi = Eigen::ArrayXd::Zero(3);
    p.ddxi = Eigen::ArrayXd::Zero(3);
    for (int i = 0; i < 3; ++i) {
      p.dxi[i] = i == 0 ? 0.0 : val(rng);
      p.ddxi[i] = val(rng);
    }
    for (Eigen::Index i = 0; i < 3; ++i) {
      Eigen::ArrayXd lam = eigenvalues_radial(p, i, n);
      REQUIRE(lam.size() == n);
      double direct = s_k(p.dxi[i], p.ddxi[i], p.grid[i], k, n);
      CHECK(direct == doctest::Approx(minor_sum(lam, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("finite differences recover smooth derivatives at second order") {
  auto build = [](int m) {
    RadialProfile p;
    p.grid = Eigen::ArrayXd::LinSpaced(m + 1, 0.0, 2.0);
    p.xi = p.grid.pow(4) + 1.0;
    return with_fd_derivatives(std::move(p));
  };
  RadialProfile c = build(64), f = build(128);
  auto max_err = [](const RadialProfile& p) {
    double e = 0.0;
    for (Eigen::Index i = 0; i < p.grid.size(); ++i)
      e = std::max(e, std::fabs(p.dxi[i] - 4.0 * std::pow(p.grid[i], 3)));
    return e;
  };
  double ec = max_err(c), ef = max_err(f);
  CHECK(ef < ec / 3.0);  // ~4x shrink per doubling
  CHECK(c.dxi[0] == 0.0);
}

TEST_CASE("closed-form pair has vanishing system residual") {
  ProblemSpec spec;
  spec.n = 3;
  spec.k1 = spec.k2 = 1;
  spec.a1 = Expr::parse("1");
  spec.a2 = Expr::parse("1");
  spec.p1 = Expr::parse("4*(t^3+(N+2)*t^2)/sqrt(t^2+1)");
  spec.p2 = Expr::parse("2*(t+N)/(t^4+1)");
  spec.f1 = Expr::parse("sqrt(t)");
  spec.f2 = Expr::parse("t");

  RadialProfile u1, u2;
  u1.grid = u2.grid = Eigen::ArrayXd::LinSpaced(257, 0.0, 5.0);
  u1.xi = u1.grid.pow(4) + 1.0;
  u1.dxi = 4.0 * u1.grid.pow(3);
  u1.ddxi = 12.0 * u1.grid.pow(2);
  u2.xi = u2.grid.pow(2) + 1.0;
  u2.dxi = 2.0 * u2.grid;
  u2.ddxi = Eigen::ArrayXd::Constant(257, 2.0);

  ResidualReport rep = pde_residual(spec, u1, u2);
  CHECK(rep.sup1 < 1e-9);
  CHECK(rep.sup2 < 1e-9);
  CHECK(!rep.negative_derivative_warning);
}
