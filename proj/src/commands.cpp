#include "radhess/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "radhess/classify.hpp"
#include "radhess/hessian.hpp"
#include "radhess/iteration.hpp"
#include "radhess/output.hpp"

namespace radhess::cli {

namespace {

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
}

Numerics merged_numerics(const ConfigDocument& config, const RunOptions& opt) {
  Numerics n = config.numerics;
  if (opt.rmax) n.rmax = *opt.rmax;
  if (opt.grid_n) n.grid_n = *opt.grid_n;
  if (opt.tol) n.tol = *opt.tol;
  if (opt.max_iter) n.max_iter = *opt.max_iter;
  if (opt.limit_budget) n.limit_budget = *opt.limit_budget;
  return n;
}

ClassifyOptions classify_options(const Numerics& n) {
  ClassifyOptions co;
  co.limit.r0 = n.limit_r0;
  co.limit.r_budget = n.limit_budget;
  return co;
}

}  // namespace

int run_solve(const ConfigDocument& config, const RunOptions& opt, std::ostream& log) {
  Numerics num = merged_numerics(config, opt);
  ensure_dir(opt.out_dir);
  SolveOptions so;
  so.tol = num.tol;
  so.max_iter = num.max_iter;
  so.refine_cap = num.refine_cap;
  SolutionProfile prof = solve(config.problem, num.rmax, num.grid_n, so);

  write_csv(join(opt.out_dir, "solution.csv"),
            {{"r", &prof.grid},
             {"u1", &prof.u1},
             {"u2", &prof.u2},
             {"du1", &prof.du1},
             {"du2", &prof.du2}});
  write_svg_plot(join(opt.out_dir, "solution.svg"), prof.grid,
                 {{"u1", &prof.u1}, {"u2", &prof.u2}}, "radial solution profiles");

  log << "status: " << to_string(prof.status) << "\n"
      << "iterations: " << prof.iterations_used
      << ", refinement level: " << prof.refinement_level
      << ", last sup-delta: " << prof.sup_norm_delta << "\n";
  if (prof.status == SolveStatus::BlowUpSuspected) {
    log << "blow-up suspected at r = " << prof.blow_up_radius << " inside [0, " << num.rmax
        << "]\n";
    return kOk;  // a designed outcome, artifacts are complete
  }
  if (prof.status == SolveStatus::MaxIterations) {
    log << "iteration budget exhausted before convergence; artifacts are partial\n";
    return kFault;
  }
  return kOk;
}

int run_classify(const ConfigDocument& config, const RunOptions& opt, std::ostream& log) {
  Numerics num = merged_numerics(config, opt);
  ensure_dir(opt.out_dir);
  ClassifyOptions co = classify_options(num);
  const GrowthWitness* w = config.witness ? &*config.witness : nullptr;
  ClassificationReport rep = classify(config.problem, w, co);

  std::ofstream out(join(opt.out_dir, "report.csv"), std::ios::binary);
  out << "quantity,value_at_rmax,verdict,extrapolated_limit\n";
  auto row = [&](const char* name, const LimitEstimate& e) {
    out << name << "," << format_csv_number(e.value_at_rmax) << "," << to_string(e.verdict)
        << "," << (e.has_extrapolated ? format_csv_number(e.extrapolated_limit) : "") << "\n";
  };
  row("Pbar12", rep.p_bar_12);
  row("Pbar21", rep.p_bar_21);
  row("Punder12", rep.p_under_12);
  row("Punder21", rep.p_under_21);
  row("H12", rep.h_12_inf);
  row("H21", rep.h_21_inf);
  out << "M1," << format_csv_number(rep.constants.m1_cap) << ",,\n";
  out << "M2," << format_csv_number(rep.constants.m2_cap) << ",,\n";
  out << "m1," << format_csv_number(rep.constants.m1_low) << ",,\n";
  out << "m2," << format_csv_number(rep.constants.m2_low) << ",,\n";
  out << "M1plus," << format_csv_number(rep.constants.m1_plus.supremum) << ","
      << to_string(rep.constants.m1_plus.tail.verdict) << ",\n";
  out << "M2plus," << format_csv_number(rep.constants.m2_plus.supremum) << ","
      << to_string(rep.constants.m2_plus.tail.verdict) << ",\n";
  out << "verdict," << to_string(rep.verdict) << ",,\n";
  if (rep.remark_upper_variant)
    out << "remark_variant," << rep.remark_upper_variant << ",,\n";
  if (rep.remark_lower_default_1) out << "phiunder1,default f1,,\n";
  if (rep.remark_lower_default_2) out << "phiunder2,default f2,,\n";

  log << "verdict: " << to_string(rep.verdict) << "\n";
  if (!rep.blocking.empty()) log << "blocking estimate: " << rep.blocking << "\n";
  for (const Violation& v : rep.hypothesis_violations)
    log << "violation [" << v.condition << "] " << v.detail << " (t=" << v.t << ", w=" << v.w
        << ")\n";

  if (rep.verdict == Verdict::HypothesesNotMet) return kViolations;
  if (rep.verdict == Verdict::Inconclusive) return kInconclusive;
  return kOk;
}

int run_verify(const ConfigDocument& config, const RunOptions& opt, std::ostream& log) {
  if (opt.u1.empty() || opt.u2.empty()) {
    log << "verify requires --u1 and --u2 closed-form expressions\n";
    return kFault;
  }
  Numerics num = merged_numerics(config, opt);
  ensure_dir(opt.out_dir);
  const ProblemSpec& spec = config.problem;

  Eigen::ArrayXd grid(num.grid_n + 1);
  for (int i = 0; i <= num.grid_n; ++i) grid[i] = num.rmax * double(i) / num.grid_n;

  auto sample = [&](const std::string& src) {
    Expr e = Expr::parse(src);
    Eigen::ArrayXd out(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) out[i] = e.eval(grid[i], spec.n);
    return out;
  };

  RadialProfile u1, u2;
  u1.grid = u2.grid = grid;
  u1.xi = sample(opt.u1);
  u2.xi = sample(opt.u2);
  bool analytic = !opt.du1.empty() && !opt.ddu1.empty() && !opt.du2.empty() && !opt.ddu2.empty();
  if (analytic) {
    u1.dxi = sample(opt.du1);
    u1.ddxi = sample(opt.ddu1);
    u2.dxi = sample(opt.du2);
    u2.ddxi = sample(opt.ddu2);
  }

  ResidualReport rep = pde_residual(spec, u1, u2);
  write_csv(join(opt.out_dir, "residual.csv"),
            {{"r", &grid}, {"residual1", &rep.residual1}, {"residual2", &rep.residual2}});
  log << "derivative mode: " << (analytic ? "analytic" : "finite-difference") << "\n"
      << "sup-norm residual 1: " << rep.sup1 << "\n"
      << "sup-norm residual 2: " << rep.sup2 << "\n";
  if (rep.negative_derivative_warning)
    log << "warning: candidate profile has negative radial derivative somewhere\n";
  return kOk;
}

int run_hypotheses(const ConfigDocument& config, const RunOptions& opt, std::ostream& log) {
  ensure_dir(opt.out_dir);
  const GrowthWitness* w = config.witness ? &*config.witness : nullptr;
  HypothesisReport rep = check_hypotheses(config.problem, w);

  std::ofstream out(join(opt.out_dir, "hypotheses.csv"), std::ios::binary);
  out << "condition,t,w,lhs,rhs,detail\n";
  for (const Violation& v : rep.violations)
    out << v.condition << "," << format_csv_number(v.t) << "," << format_csv_number(v.w) << ","
        << format_csv_number(v.lhs) << "," << format_csv_number(v.rhs) << "," << v.detail
        << "\n";

  if (rep.ok()) {
    log << "no hypothesis violations detected\n";
    return kOk;
  }
  log << rep.violations.size() << " violation(s) detected:\n";
  for (const Violation& v : rep.violations)
    log << "  [" << v.condition << "] " << v.detail << " at t=" << v.t << ", w=" << v.w
        << " (lhs=" << v.lhs << ", rhs=" << v.rhs << ")\n";
  return kViolations;
}

}  // namespace radhess::cli
