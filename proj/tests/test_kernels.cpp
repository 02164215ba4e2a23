#include <doctest.h>

#include <cmath>

#include "radhess/kernels.hpp"

using namespace radhess;

namespace {

Eigen::ArrayXd lin_grid(double rmax, int n) {
  return Eigen::ArrayXd::LinSpaced(n + 1, 0.0, rmax);
}

ProblemSpec make_spec(const char* a, const char* p) {
  ProblemSpec s;
  s.n = 3;
  s.k1 = s.k2 = 1;
  s.a1 = s.a2 = Expr::parse(a);
  s.p1 = s.p2 = Expr::parse(p);
  s.f1 = s.f2 = Expr::parse("t");
  return s;
}

}  // namespace

TEST_CASE("binomial-style constants") {
  CHECK(binom(1, 3) == 1.0);   // 2!/(0! 2!)
  CHECK(binom(2, 5) == 4.0);   // 4!/(1! 3!)
  CHECK(binom(3, 7) == 15.0);  // 6!/(2! 4!)
  HessianConstants c = constants(4, 1, 2);
  CHECK(c.c0 == 1.0);   // 3!/(1! 3!)
  CHECK(c.c00 == 1.5);  // 3!/(2! 2!)
}

TEST_CASE("cumulative trapezoid: exact zero start, fourth-order ratio per doubling") {
  double prev_err = 0.0;
  for (int level = 0; level < 6; ++level) {
    int n = 32 << level;
    Eigen::ArrayXd g = lin_grid(1.0, n);
    Eigen::ArrayXd out = cumulative_integral(g, g.pow(2));
    CHECK(out[0] == 0.0);
    double err = std::fabs(out[n] - 1.0 / 3.0);
    if (level > 0) CHECK(err / prev_err == doctest::Approx(0.25).epsilon(0.05));
    prev_err = err;
  }
}

TEST_CASE("fused kernel, no gradient term: classical Newtonian potential form") {
  // a = 0, p = 1, N = 3, k = 1: Gminus int Gplus = t^-2 int_0^t s^2 ds = t/3
  ProblemSpec spec = make_spec("0", "1");
  KernelTable table = build_kernel_table(spec, lin_grid(4.0, 2048));
  Eigen::ArrayXd one = Eigen::ArrayXd::Ones(table.grid.size());
  Eigen::ArrayXd fused = fused_weight_all(table, Side::G2, one);
  // composite-trapezoid truncation is O(h^2) ~ 4e-6 at this resolution
  for (Eigen::Index i = 256; i < table.grid.size(); i += 256)
    CHECK(fused[i] == doctest::Approx(table.grid[i] / 3.0).epsilon(1e-5));
}

TEST_CASE("fused kernel with unit gradient coefficient: closed form") {
  // a = 1: E(t) = t, fused(t) = [(t^2 - 2t + 2) - 2 e^-t] / t^2
  ProblemSpec spec = make_spec("1", "1");
  KernelTable table = build_kernel_table(spec, lin_grid(5.0, 4096));
  Eigen::ArrayXd one = Eigen::ArrayXd::Ones(table.grid.size());
  Eigen::ArrayXd fused = fused_weight_all(table, Side::G2, one);
  for (double target : {1.0, 2.0, 5.0}) {
    Eigen::Index i = Eigen::Index(std::lround(target / 5.0 * 4096));
    double t = table.grid[i];
    double exact = ((t * t - 2.0 * t + 2.0) - 2.0 * std::exp(-t)) / (t * t);
    CHECK(fused[i] == doctest::Approx(exact).epsilon(1e-5));
  }
  CHECK(fused[0] == 0.0);
}

TEST_CASE("fused kernel reproduces the closed-form derivative of the bundled pair") {
  // With the bundled weights, int_0^t s^2 e^s p1(s) f1(s^2+1) ds = 4 t^5 e^t,
  // so the fused form must equal 4 t^3.
  ProblemSpec spec;
  spec.n = 3;
  spec.k1 = spec.k2 = 1;
  spec.a1 = spec.a2 = Expr::parse("1");
  spec.p1 = Expr::parse("4*(t^3+(N+2)*t^2)/sqrt(t^2+1)");
  spec.p2 = Expr::parse("2*(t+N)/(t^4+1)");
  spec.f1 = Expr::parse("sqrt(t)");
  spec.f2 = Expr::parse("t");
  KernelTable table = build_kernel_table(spec, lin_grid(5.0, 8192));
  Eigen::ArrayXd phi = (table.grid.pow(2) + 1.0).sqrt();  // f1(u2*)
  Eigen::ArrayXd fused = fused_weight_all(table, Side::G2, phi);
  for (Eigen::Index i = 0; i < table.grid.size(); i += 512) {
    double t = table.grid[i];
    CHECK(fused[i] == doctest::Approx(4.0 * t * t * t).epsilon(1e-5));
  }
}

TEST_CASE("ratio form matches the literal kernel product at representable radii") {
  ProblemSpec spec = make_spec("1", "1+t");
  KernelTable table = build_kernel_table(spec, lin_grid(3.0, 2048));
  Eigen::ArrayXd phi = table.grid + 0.5;
  Eigen::ArrayXd fused = fused_weight_all(table, Side::G2, phi);
  // literal: Gminus(t) * cumulative integral of Gplus * phi
  Eigen::ArrayXd inner = cumulative_integral(table.grid, table.g2plus * phi);
  for (Eigen::Index i = 256; i < table.grid.size(); i += 256) {
    double literal = table.g2minus[i] * inner[i];
    CHECK(fused[i] == doctest::Approx(literal).epsilon(1e-10));
  }
  CHECK(std::isinf(table.g2minus[0]));  // origin flag, never consumed
}

TEST_CASE("remark supremum: exponentially decaying weight gives M+ = 1") {
  // q(infinity) = int_0^inf z^-2 int_0^z s^2 e^-s ds dz = int_0^inf s e^-s = 1
  ProblemSpec spec = make_spec("0", "exp(-t)");
  KernelTable table = build_kernel_table(spec, lin_grid(1024.0, 1 << 15));
  MPlusEstimate m1 = m_plus(table, 1, 1024.0);
  CHECK(m1.tail.verdict == LimitVerdict::Finite);
  CHECK(m1.supremum == doctest::Approx(1.0).epsilon(3e-3));
  MPlusEstimate m2 = m_plus(table, 2, 1024.0);
  CHECK(m2.supremum == doctest::Approx(m1.supremum));
}

TEST_CASE("remark supremum: constant weight diverges") {
  ProblemSpec spec = make_spec("0", "1");
  KernelTable table = build_kernel_table(spec, lin_grid(1024.0, 1 << 15));
  MPlusEstimate m = m_plus(table, 1, 1024.0);
  CHECK(m.tail.verdict == LimitVerdict::Divergent);
}

TEST_CASE("kernel samples are nonnegative for admissible data") {
  ProblemSpec spec = make_spec("t", "1+t^2");
  KernelTable table = build_kernel_table(spec, lin_grid(8.0, 512));
  CHECK((table.g2plus >= 0.0).all());
  CHECK((table.g1plus >= 0.0).all());
  CHECK((table.e1 >= 0.0).all());
  CHECK((table.q1 >= 0.0).all());
  for (Eigen::Index i = 1; i < table.grid.size(); ++i) CHECK(table.g2minus[i] >= 0.0);
}
