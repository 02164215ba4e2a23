#ifndef RADHESS_KERNELS_HPP
#define RADHESS_KERNELS_HPP

#include <Eigen/Core>

#include "radhess/limits.hpp"
#include "radhess/problem.hpp"

namespace radhess {

// C0 = (N-1)! / [k1! (N-k1)!] and C00 = (N-1)! / [k2! (N-k2)!].
struct HessianConstants {
  double c0 = 0.0;
  double c00 = 0.0;
};

HessianConstants constants(int n, int k1, int k2);

// (n-1)! / [(k-1)! (n-k)!]
double binom(int k, int n);

// Composite trapezoidal cumulative integral; out[0] = 0.
Eigen::ArrayXd cumulative_integral(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& samples);

// Which kernel pair an operation refers to. G1 carries (a2, p2, k2, C00)
// and drives the u2 update; G2 carries (a1, p1, k1, C0) and drives u1.
enum class Side { G1, G2 };

// Sampled exponent integrals and kernels on a radial grid.
// e1(t) = (1/C0) int_0^t s^(k1-1) a1(s) ds, e2 the (a2, k2, C00) analog.
// g2minus(x) = x^(k1-N) exp(-e1(x)) / C0, g2plus(x) = x^(N-1) exp(e1(x)) p1(x);
// g1minus/g1plus symmetric via e2 and p2. The minus kernels diverge at the
// origin; index 0 holds +inf as a flag and is never consumed by the fused
// evaluation below. q1/q2 are the inner cumulative integrals
// int_0^t (Gminus(z) int_0^z Gplus)^(1/k) dz used by the P integrals and M+.
struct KernelTable {
  Eigen::ArrayXd grid;
  int n = 0, k1 = 0, k2 = 0;
  double c0 = 0.0, c00 = 0.0;
  Eigen::ArrayXd e1, e2;
  Eigen::ArrayXd p1s, p2s;
  Eigen::ArrayXd g1minus, g1plus, g2minus, g2plus;
  Eigen::ArrayXd q1, q2;
};

KernelTable build_kernel_table(const ProblemSpec& spec, const Eigen::ArrayXd& grid);

// Stable evaluation of Gminus(t) * int_0^t Gplus(s) phi(s) ds for every grid
// node, in the ratio form
//   (1/C) int_0^t (s/t)^(N-k) s^(k-1) exp(E(s)-E(t)) p(s) phi(s) ds,
// which never forms x^(k-N) or exp(E) on their own. Trapezoidal, O(n) via a
// rescaling recurrence that is exactly the composite trapezoid of the ratio
// integrand at each node. phi holds samples of the inner factor on the grid.
Eigen::ArrayXd fused_weight_all(const KernelTable& table, Side side, const Eigen::ArrayXd& phi);

double fused_weight(const KernelTable& table, Side side, const Eigen::ArrayXd& phi,
                    Eigen::Index i);

// Remark-improvement suprema: M1+ (which = 1) is the supremum over t <= rmax
// of q1, with a finite/divergent flag from the dyadic tail of q1.
struct MPlusEstimate {
  double supremum = 0.0;
  LimitEstimate tail;
};

MPlusEstimate m_plus(const KernelTable& table, int which, double r_max,
                     const LimitOptions& opt = {});

}  // namespace radhess

#endif
