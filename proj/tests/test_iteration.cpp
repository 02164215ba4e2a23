#include <doctest.h>

#include <cmath>

#include "radhess/hessian.hpp"
#include "radhess/iteration.hpp"

using namespace radhess;

namespace {

Eigen::ArrayXd lin_grid(double rmax, int n) {
  return Eigen::ArrayXd::LinSpaced(n + 1, 0.0, rmax);
}

ProblemSpec bundled_spec() {
  ProblemSpec s;
  s.n = 3;
  s.k1 = s.k2 = 1;
  s.a1 = s.a2 = Expr::parse("1");
  s.p1 = Expr::parse("4*(t^3+(N+2)*t^2)/sqrt(t^2+1)");
  s.p2 = Expr::parse("2*(t+N)/(t^4+1)");
  s.f1 = Expr::parse("sqrt(t)");
  s.f2 = Expr::parse("t");
  return s;
}

}  // namespace

TEST_CASE("first iterate has the hand-computable parabola form") {
  // a = 0, p = 1, f = t, a_c = b_c = 1: u1^1(r) = 1 + int_0^r z/3 dz = 1 + r^2/6
  ProblemSpec s;
  s.n = 3;
  s.k1 = s.k2 = 1;
  s.a1 = s.a2 = Expr::parse("0");
  s.p1 = s.p2 = Expr::parse("1");
  s.f1 = s.f2 = Expr::parse("t");
  KernelTable table = build_kernel_table(s, lin_grid(2.0, 1024));
  IterateState st = step(s, init_state(s, table));
  CHECK(st.m == 1);
  for (Eigen::Index i = 0; i < table.grid.size(); i += 128) {
    double r = table.grid[i];
    CHECK(st.u1[i] == doctest::Approx(1.0 + r * r / 6.0).epsilon(1e-5));
  }
}

TEST_CASE("iterates are nondecreasing in the stage index and in r") {
  ProblemSpec s = bundled_spec();
  KernelTable table = build_kernel_table(s, lin_grid(5.0, 512));
  IterateState st = init_state(s, table);
  for (int m = 0; m < 6; ++m) {
    IterateState next = step(s, st);
    CHECK((next.u1 >= st.u1 - 1e-12).all());
    CHECK((next.u2 >= st.u2 - 1e-12).all());
    for (Eigen::Index i = 1; i < next.u1.size(); ++i) {
      CHECK(next.u1[i] >= next.u1[i - 1] - 1e-12);
      CHECK(next.u2[i] >= next.u2[i - 1] - 1e-12);
    }
    st = next;
  }
}

TEST_CASE("solve recovers the closed-form pair") {
  ProblemSpec s = bundled_spec();
  SolutionProfile prof = solve(s, 5.0, 1024);
  CHECK(prof.status == SolveStatus::Converged);
  for (Eigen::Index i = 0; i < prof.grid.size(); i += 64) {
    double r = prof.grid[i];
    double e1 = std::fabs(prof.u1[i] - (r * r * r * r + 1.0)) / (r * r * r * r + 1.0);
    double e2 = std::fabs(prof.u2[i] - (r * r + 1.0)) / (r * r + 1.0);
    CHECK(e1 < 1e-6);
    CHECK(e2 < 1e-6);
  }
}

TEST_CASE("converged profile is a fixed point of one more update") {
  ProblemSpec s = bundled_spec();
  SolveOptions opt;
  opt.tol = 1e-9;
  SolutionProfile prof = solve(s, 5.0, 1024, opt);
  REQUIRE(prof.status == SolveStatus::Converged);
  KernelTable table = build_kernel_table(s, prof.grid);
  IterateState st;
  st.m = 1;
  st.u1 = prof.u1;
  st.u2 = prof.u2;
  st.table = &table;
  IterateState next = step(s, st);
  double d = std::max((next.u1 - prof.u1).abs().maxCoeff(),
                      (next.u2 - prof.u2).abs().maxCoeff());
  CHECK(d < 10.0 * opt.tol * std::max(1.0, prof.u1.maxCoeff()));
}

TEST_CASE("independent high-order marching oracle agrees with the integral solver") {
  // a = 0, k = 1, N = 3: u'' + (2/r) u' = p f(v) coupled both ways. March the
  // ODE system with classical RK4 at 10x resolution and compare.
  ProblemSpec s;
  s.n = 3;
  s.k1 = s.k2 = 1;
  s.a1 = s.a2 = Expr::parse("0");
  s.p1 = s.p2 = Expr::parse("exp(-t)");
  s.f1 = s.f2 = Expr::parse("t");
  const double rmax = 8.0;
  SolutionProfile prof = solve(s, rmax, 1024);
  REQUIRE(prof.status == SolveStatus::Converged);

  const int n_ode = 1 << 16;
  const double h = rmax / n_ode;
  // state: (u1, w1 = r^2 u1', u2, w2 = r^2 u2'); w' = r^2 p f(v)
  auto rhs = [&](double r, const Eigen::Array4d& y) {
    Eigen::Array4d d;
    double r2 = r * r;
    double inv = r2 > 0.0 ? 1.0 / r2 : 0.0;
    d[0] = y[1] * inv;
    d[1] = r2 * std::exp(-r) * y[2];
    d[2] = y[3] * inv;
    d[3] = r2 * std::exp(-r) * y[0];
    return d;
  };
  Eigen::Array4d y;
  y << 1.0, 0.0, 1.0, 0.0;
  double max_rel = 0.0;
  Eigen::Index gi = 0;
  for (int i = 0; i <= n_ode; ++i) {
    double r = i * h;
    while (gi < prof.grid.size() && prof.grid[gi] <= r + 1e-12) {
      if (std::fabs(prof.grid[gi] - r) < 1e-9) {
        max_rel = std::max(max_rel, std::fabs(prof.u1[gi] - y[0]) / std::fabs(y[0]));
        max_rel = std::max(max_rel, std::fabs(prof.u2[gi] - y[2]) / std::fabs(y[2]));
      }
      ++gi;
    }
    Eigen::Array4d k1 = rhs(r, y);
    Eigen::Array4d k2 = rhs(r + h / 2, y + h / 2 * k1);
    Eigen::Array4d k3 = rhs(r + h / 2, y + h / 2 * k2);
    Eigen::Array4d k4 = rhs(r + h, y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  CHECK(max_rel < 1e-5);
}

TEST_CASE("strong superlinear coupling is reported as suspected blow-up") {
  ProblemSpec s;
  s.n = 3;
  s.k1 = s.k2 = 1;
  s.a1 = s.a2 = Expr::parse("0");
  s.p1 = s.p2 = Expr::parse("10");
  s.f1 = s.f2 = Expr::parse("t^3");
  s.central_a = s.central_b = 2.0;
  SolutionProfile prof = solve(s, 10.0, 512);
  CHECK(prof.status == SolveStatus::BlowUpSuspected);
  CHECK(prof.blow_up_radius > 0.0);
  CHECK(prof.blow_up_radius <= 10.0);
}
