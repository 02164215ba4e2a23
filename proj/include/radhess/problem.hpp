#ifndef RADHESS_PROBLEM_HPP
#define RADHESS_PROBLEM_HPP

#include <optional>

#include "radhess/expr.hpp"

namespace radhess {

// The radial system data: dimension, Hessian orders, coefficient functions
// a1, a2, weights p1, p2, nonlinearities f1, f2 (all univariate expressions
// in t) and the central values u1(0)=a, u2(0)=b.
struct ProblemSpec {
  int n = 3;       // dimension, >= 3
  int k1 = 1;      // order of the first Hessian operator, in {1..n}
  int k2 = 1;      // order of the second
  Expr a1, a2;     // gradient-term coefficients, >= 0
  Expr p1, p2;     // weights, > 0
  Expr f1, f2;     // nonlinearities, nondecreasing, > 0 for positive args
  double central_a = 1.0;
  double central_b = 1.0;
};

// Growth-envelope data for the sub/super-multiplicativity hypotheses:
// f1(t*w) <= cbar1 * h1(t) * phibar1(w) for w >= 1 and t past its threshold,
// and f1(m1*w) >= cunder1 * phiunder1(w) for w >= 1 (symmetrically for f2).
// Components are optional; missing lower envelopes can be autofilled when
// m >= 1 (phiunder = f, cunder = 1).
struct GrowthWitness {
  std::optional<Expr> h1, h2;
  std::optional<Expr> phibar1, phibar2;
  std::optional<Expr> phiunder1, phiunder2;
  std::optional<double> cbar1, cbar2;
  std::optional<double> cunder1, cunder2;

  bool upper1() const { return h1 && phibar1 && cbar1; }
  bool upper2() const { return h2 && phibar2 && cbar2; }
  bool lower1() const { return phiunder1 && cunder1; }
  bool lower2() const { return phiunder2 && cunder2; }
};

}  // namespace radhess

#endif
