#include "radhess/iteration.hpp"

#include <cmath>
#include <stdexcept>

namespace radhess {

namespace {

Eigen::ArrayXd uniform_grid(double r_max, int n) {
  Eigen::ArrayXd g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = r_max * double(i) / n;
  return g;
}

Eigen::ArrayXd map_expr(const Expr& f, const Eigen::ArrayXd& x, int n) {
  Eigen::ArrayXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = f.eval(x[i], n);
  return out;
}

// First index whose value exceeds the guard or is non-finite, or -1.
Eigen::Index overflow_index(const Eigen::ArrayXd& u, double guard) {
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (!std::isfinite(u[i]) || std::fabs(u[i]) > guard) return i;
  return -1;
}

struct StageResult {
  Eigen::ArrayXd u1, u2, du1, du2;
  int iterations = 0;
  double delta = 0.0;
  SolveStatus status = SolveStatus::Converged;
  double blow_up_radius = 0.0;
};

StageResult run_stage(const ProblemSpec& spec, const KernelTable& table,
                      const SolveOptions& opt) {
  StageResult res;
  IterateState state = init_state(spec, table);
  Eigen::ArrayXd phi1, phi2;
  for (;;) {
    IterateState next = step(spec, state);
    Eigen::Index ov1 = overflow_index(next.u1, opt.overflow_guard);
    Eigen::Index ov2 = overflow_index(next.u2, opt.overflow_guard);
    if (ov1 >= 0 || ov2 >= 0) {
      Eigen::Index i = ov1 >= 0 ? ov1 : ov2;
      if (ov1 >= 0 && ov2 >= 0) i = std::min(ov1, ov2);
      res.status = SolveStatus::BlowUpSuspected;
      res.blow_up_radius = table.grid[i];
      res.u1 = next.u1;
      res.u2 = next.u2;
      res.iterations = next.m;
      return res;
    }
    double d1 = (next.u1 - state.u1).abs().maxCoeff();
    double d2 = (next.u2 - state.u2).abs().maxCoeff();
    res.delta = std::max(d1, d2);
    state = std::move(next);
    res.iterations = state.m;
    if (res.delta < opt.tol) break;
    if (state.m >= opt.max_iter) {
      res.status = SolveStatus::MaxIterations;
      break;
    }
  }
  res.u1 = state.u1;
  res.u2 = state.u2;
  phi1 = map_expr(spec.f1, res.u2, spec.n);
  phi2 = map_expr(spec.f2, res.u1, spec.n);
  res.du1 = fused_weight_all(table, Side::G2, phi1).pow(1.0 / spec.k1);
  res.du2 = fused_weight_all(table, Side::G1, phi2).pow(1.0 / spec.k2);
  return res;
}

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIterations:
      return "max-iterations";
    case SolveStatus::BlowUpSuspected:
      return "blow-up-suspected";
  }
  return "?";
}

IterateState init_state(const ProblemSpec& spec, const KernelTable& table) {
  IterateState s;
  s.m = 0;
  s.table = &table;
  s.u1 = Eigen::ArrayXd::Constant(table.grid.size(), spec.central_a);
  s.u2 = Eigen::ArrayXd::Constant(table.grid.size(), spec.central_b);
  return s;
}

IterateState step(const ProblemSpec& spec, const IterateState& state) {
  const KernelTable& table = *state.table;
  IterateState next;
  next.table = state.table;
  next.m = state.m + 1;

  Eigen::ArrayXd phi1 = map_expr(spec.f1, state.u2, spec.n);
  Eigen::ArrayXd d1 = fused_weight_all(table, Side::G2, phi1).pow(1.0 / spec.k1);
  next.u1 = spec.central_a + cumulative_integral(table.grid, d1);

  Eigen::ArrayXd phi2 = map_expr(spec.f2, next.u1, spec.n);
  Eigen::ArrayXd d2 = fused_weight_all(table, Side::G1, phi2).pow(1.0 / spec.k2);
  next.u2 = spec.central_b + cumulative_integral(table.grid, d2);
  return next;
}

SolutionProfile solve(const ProblemSpec& spec, double r_max, int grid_n,
                      const SolveOptions& opt) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  SolutionProfile prof;
  Eigen::ArrayXd prev_u1, prev_u2;
  int n = grid_n;
  for (int level = 0;; ++level) {
    Eigen::ArrayXd grid = uniform_grid(r_max, n);
    KernelTable table = build_kernel_table(spec, grid);
    StageResult stage = run_stage(spec, table, opt);

    prof.grid = grid;
    prof.u1 = stage.u1;
    prof.u2 = stage.u2;
    prof.du1 = stage.du1;
    prof.du2 = stage.du2;
    prof.iterations_used = stage.iterations;
    prof.sup_norm_delta = stage.delta;
    prof.refinement_level = level;
    prof.status = stage.status;
    prof.blow_up_radius = stage.blow_up_radius;
    if (stage.status != SolveStatus::Converged) return prof;

    if (level > 0) {
      // previous level's nodes are every other node of this one
      double diff = 0.0;
      for (Eigen::Index i = 0; i < prev_u1.size(); ++i) {
        diff = std::max(diff, std::fabs(prev_u1[i] - stage.u1[2 * i]));
        diff = std::max(diff, std::fabs(prev_u2[i] - stage.u2[2 * i]));
      }
      prof.inter_resolution_delta = diff;
      if (diff < opt.tol || level >= opt.refine_cap) return prof;
    }
    prev_u1 = stage.u1;
    prev_u2 = stage.u2;
    n *= 2;
  }
}

}  // namespace radhess
