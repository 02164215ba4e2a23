#include "radhess/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace radhess {

namespace {

Eigen::ArrayXd eval_on_grid(const Expr& e, const Eigen::ArrayXd& grid, int n,
                            const char* name) {
  Eigen::ArrayXd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    try {
      out[i] = e.eval(grid[i], n);
    } catch (const ExprError& err) {
      throw ExprError(std::string(name) + " at r=" + std::to_string(grid[i]) + ": " +
                      err.what());
    }
  }
  return out;
}

void check_grid(const Eigen::ArrayXd& grid) {
  if (grid.size() < 1 || grid[0] != 0.0)
    throw std::invalid_argument("grid must start at r=0");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
}

}  // namespace

double binom(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("binom: order out of range");
  double num = 1.0, den = 1.0;
  for (int i = 1; i <= n - 1; ++i) num *= i;
  for (int i = 1; i <= k - 1; ++i) den *= i;
  for (int i = 1; i <= n - k; ++i) den *= i;
  return num / den;
}

HessianConstants constants(int n, int k1, int k2) {
  if (n < 3) throw std::invalid_argument("dimension must be >= 3");
  if (k1 < 1 || k1 > n || k2 < 1 || k2 > n)
    throw std::invalid_argument("Hessian orders must lie in {1..N}");
  auto c = [n](int k) {
    double num = 1.0, den = 1.0;
    for (int i = 1; i <= n - 1; ++i) num *= i;
    for (int i = 1; i <= k; ++i) den *= i;
    for (int i = 1; i <= n - k; ++i) den *= i;
    return num / den;
  };
  return {c(k1), c(k2)};
}

Eigen::ArrayXd cumulative_integral(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& samples) {
  if (grid.size() != samples.size()) throw std::invalid_argument("grid/sample length mismatch");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
  Eigen::ArrayXd out(grid.size());
  if (grid.size() == 0) return out;
  out[0] = 0.0;
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (grid[i] - grid[i - 1]) * (samples[i] + samples[i - 1]);
  return out;
}

KernelTable build_kernel_table(const ProblemSpec& spec, const Eigen::ArrayXd& grid) {
  check_grid(grid);
  KernelTable t;
  t.grid = grid;
  t.n = spec.n;
  t.k1 = spec.k1;
  t.k2 = spec.k2;
  HessianConstants c = constants(spec.n, spec.k1, spec.k2);
  t.c0 = c.c0;
  t.c00 = c.c00;

  Eigen::ArrayXd a1s = eval_on_grid(spec.a1, grid, spec.n, "a1");
  Eigen::ArrayXd a2s = eval_on_grid(spec.a2, grid, spec.n, "a2");
  t.p1s = eval_on_grid(spec.p1, grid, spec.n, "p1");
  t.p2s = eval_on_grid(spec.p2, grid, spec.n, "p2");

  Eigen::ArrayXd integ1(grid.size()), integ2(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    integ1[i] = std::pow(grid[i], spec.k1 - 1) * a1s[i] / t.c0;
    integ2[i] = std::pow(grid[i], spec.k2 - 1) * a2s[i] / t.c00;
  }
  // k = 1 makes s^(k-1) = 1 including at s = 0 (0^0).
  if (spec.k1 == 1) integ1[0] = a1s[0] / t.c0;
  if (spec.k2 == 1) integ2[0] = a2s[0] / t.c00;
  t.e1 = cumulative_integral(grid, integ1);
  t.e2 = cumulative_integral(grid, integ2);

  const double inf = std::numeric_limits<double>::infinity();
  auto fill = [&](Eigen::ArrayXd& gm, Eigen::ArrayXd& gp, const Eigen::ArrayXd& e,
                  const Eigen::ArrayXd& p, int k, double cst) {
    gm.resize(grid.size());
    gp.resize(grid.size());
    gm[0] = (k == t.n) ? 1.0 / cst : inf;  // singular at the origin unless k = N
    gp[0] = 0.0;
    for (Eigen::Index i = 1; i < grid.size(); ++i) {
      gm[i] = std::pow(grid[i], k - t.n) * std::exp(-e[i]) / cst;
      gp[i] = std::pow(grid[i], t.n - 1) * std::exp(e[i]) * p[i];
    }
  };
  fill(t.g2minus, t.g2plus, t.e1, t.p1s, t.k1, t.c0);
  fill(t.g1minus, t.g1plus, t.e2, t.p2s, t.k2, t.c00);

  Eigen::ArrayXd ones = Eigen::ArrayXd::Ones(grid.size());
  Eigen::ArrayXd f1 = fused_weight_all(t, Side::G1, ones).pow(1.0 / t.k2);
  Eigen::ArrayXd f2 = fused_weight_all(t, Side::G2, ones).pow(1.0 / t.k1);
  t.q1 = cumulative_integral(grid, f1);
  t.q2 = cumulative_integral(grid, f2);
  return t;
}

Eigen::ArrayXd fused_weight_all(const KernelTable& table, Side side, const Eigen::ArrayXd& phi) {
  const Eigen::ArrayXd& grid = table.grid;
  if (phi.size() != grid.size()) throw std::invalid_argument("phi/grid length mismatch");
  const bool g2 = side == Side::G2;
  const int k = g2 ? table.k1 : table.k2;
  const double cst = g2 ? table.c0 : table.c00;
  const Eigen::ArrayXd& e = g2 ? table.e1 : table.e2;
  const Eigen::ArrayXd& p = g2 ? table.p1s : table.p2s;
  const int nk = table.n - k;

  Eigen::ArrayXd out(grid.size());
  out[0] = 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    double t0 = grid[i - 1], t1 = grid[i];
    double de = e[i - 1] - e[i];            // <= 0 for a >= 0
    double ratio = std::pow(t0 / t1, nk) * std::exp(de);
    // integrand endpoints of g(s) = (s/t1)^(N-k) s^(k-1) e^(E(s)-E(t1)) p phi
    double g0 = (t0 == 0.0)
                    ? 0.0
                    : std::pow(t0 / t1, nk) * std::pow(t0, k - 1) * std::exp(de) * p[i - 1] *
                          phi[i - 1];
    double g1 = std::pow(t1, k - 1) * p[i] * phi[i];
    acc = ratio * acc + 0.5 * (t1 - t0) * (g0 + g1);
    out[i] = acc / cst;
  }
  return out;
}

double fused_weight(const KernelTable& table, Side side, const Eigen::ArrayXd& phi,
                    Eigen::Index i) {
  if (i < 0 || i >= table.grid.size()) throw std::out_of_range("grid index");
  return fused_weight_all(table, side, phi)[i];
}

MPlusEstimate m_plus(const KernelTable& table, int which, double r_max,
                     const LimitOptions& opt) {
  if (which != 1 && which != 2) throw std::invalid_argument("m_plus: which must be 1 or 2");
  const Eigen::ArrayXd& q = which == 1 ? table.q1 : table.q2;
  const Eigen::ArrayXd& grid = table.grid;
  if (r_max > grid[grid.size() - 1] * (1.0 + 1e-12))
    throw std::invalid_argument("m_plus: table does not cover r_max");

  auto q_at = [&](double r) {
    // linear interpolation; q is nondecreasing so the sup up to r is q(r)
    Eigen::Index hi = 1;
    while (hi < grid.size() - 1 && grid[hi] < r) ++hi;
    double w = (r - grid[hi - 1]) / (grid[hi] - grid[hi - 1]);
    return q[hi - 1] + w * (q[hi] - q[hi - 1]);
  };

  MPlusEstimate est;
  est.supremum = q_at(r_max);
  LimitOptions lo = opt;
  lo.r_budget = std::min(opt.r_budget, r_max);
  est.tail = limit_estimate(q_at, lo);
  return est;
}

}  // namespace radhess
