#ifndef RADHESS_ITERATION_HPP
#define RADHESS_ITERATION_HPP

#include <Eigen/Core>

#include "radhess/kernels.hpp"
#include "radhess/problem.hpp"

namespace radhess {

// One stage of the successive approximation: iterate index plus both value
// arrays on the table's grid.
struct IterateState {
  int m = 0;
  Eigen::ArrayXd u1, u2;
  const KernelTable* table = nullptr;
};

enum class SolveStatus { Converged, MaxIterations, BlowUpSuspected };

const char* to_string(SolveStatus s);

struct SolutionProfile {
  Eigen::ArrayXd grid;
  Eigen::ArrayXd u1, u2;
  Eigen::ArrayXd du1, du2;  // from the integral representation, not differencing
  int iterations_used = 0;
  double sup_norm_delta = 0.0;      // last-step sup change
  double inter_resolution_delta = 0.0;
  int refinement_level = 0;
  SolveStatus status = SolveStatus::Converged;
  double blow_up_radius = 0.0;  // meaningful for BlowUpSuspected
};

struct SolveOptions {
  double tol = 1e-8;
  int max_iter = 200;
  int refine_cap = 6;
  double overflow_guard = 1e150;
};

// m = 0 state: u1 = a, u2 = b everywhere.
IterateState init_state(const ProblemSpec& spec, const KernelTable& table);

// One monotone update. u1 is rebuilt from f1(u2^{m-1}); u2 then uses the
// freshly built u1 (same index), matching the displayed scheme.
IterateState step(const ProblemSpec& spec, const IterateState& state);

// Picard iteration to sup-norm tolerance, then grid-doubling until two
// resolutions agree (or budgets run out). Overflow past the guard is
// reported as suspected blow-up inside [0, r_max], not as a fault.
SolutionProfile solve(const ProblemSpec& spec, double r_max, int grid_n,
                      const SolveOptions& opt = {});

}  // namespace radhess

#endif
