#include "radhess/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radhess {

namespace {

constexpr double kRelSlack = 1e-9;

Eigen::ArrayXd uniform_grid(double r_max, int n) {
  Eigen::ArrayXd g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = r_max * double(i) / n;
  return g;
}

double interp(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& vals, double r) {
  const double* begin = grid.data();
  const double* end = begin + grid.size();
  const double* it = std::lower_bound(begin, end, r);
  Eigen::Index hi = it - begin;
  if (hi <= 0) return vals[0];
  if (hi >= grid.size()) return vals[grid.size() - 1];
  double w = (r - grid[hi - 1]) / (grid[hi] - grid[hi - 1]);
  return vals[hi - 1] + w * (vals[hi] - vals[hi - 1]);
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  return out;
}

DerivedConstants derive_constants_with_table(const ProblemSpec& spec, const KernelTable& table,
                                             double r_max, const ClassifyOptions& opt) {
  DerivedConstants c;
  double f2a = spec.f2.eval(spec.central_a, spec.n);
  double f1b = spec.f1.eval(spec.central_b, spec.n);
  if (f2a <= 0.0 || f1b <= 0.0) {
    c.hypothesis_violation = true;
    c.violation_note = "f must be positive at the central values (C1)";
    f2a = std::max(f2a, 1e-300);
    f1b = std::max(f1b, 1e-300);
  }
  double f2a_k = std::pow(f2a, 1.0 / spec.k2);
  double f1b_k = std::pow(f1b, 1.0 / spec.k1);
  c.m1_cap = spec.central_b > f2a_k ? spec.central_b / f2a_k : 1.0;
  c.m2_cap = spec.central_a > f1b_k ? spec.central_a / f1b_k : 1.0;
  c.m1_low = std::min(spec.central_b, f2a_k);
  c.m2_low = std::min(spec.central_a, f1b_k);
  c.m1_plus = m_plus(table, 1, r_max, opt.limit);
  c.m2_plus = m_plus(table, 2, r_max, opt.limit);
  return c;
}

}  // namespace

DerivedConstants derive_constants(const ProblemSpec& spec, double r_max,
                                  const ClassifyOptions& opt) {
  KernelTable table = build_kernel_table(spec, uniform_grid(r_max, opt.limit_grid_n));
  return derive_constants_with_table(spec, table, r_max, opt);
}

HTransform::HTransform(double lower, double outer_exponent_k, std::function<double(double)> denom,
                       int subintervals)
    : lower_(lower), inv_k_(outer_exponent_k), denom_(std::move(denom)),
      subintervals_(subintervals) {
  double d0 = denom_(lower_);
  if (!(d0 > 0.0))
    throw std::domain_error("H transform: singular lower endpoint (denominator vanishes)");
}

double HTransform::operator()(double r) const {
  return between(lower_, r);
}

double HTransform::between(double r0, double r1) const {
  if (r0 < lower_) throw std::domain_error("H transform evaluated below its lower limit");
  if (r1 < r0) throw std::domain_error("H transform: reversed interval");
  if (r1 == r0) return 0.0;
  const int n = subintervals_;
  auto g = [&](double t) { return std::pow(denom_(t), -inv_k_); };
  // Geometric node spacing keeps the step near the left endpoint fine even
  // when the interval spans several decades; uniform for narrow windows.
  const bool geometric = r0 > 0.0 && r1 / r0 > 4.0;
  const double ratio = geometric ? std::pow(r1 / r0, 1.0 / n) : 0.0;
  double sum = 0.0;
  double t_prev = r0, g_prev = g(r0);
  for (int i = 1; i <= n; ++i) {
    double t = geometric ? r0 * std::pow(ratio, double(i))
                         : r0 + (r1 - r0) * double(i) / n;
    if (i == n) t = r1;
    double gv = g(t);
    sum += 0.5 * (g_prev + gv) * (t - t_prev);
    t_prev = t;
    g_prev = gv;
  }
  return sum;
}

double HTransform::inverse(double x) const {
  if (x < 0.0) throw std::domain_error("H inverse: negative argument");
  if (x == 0.0) return lower_;
  double lo = lower_, hi = lower_ + 1.0;
  while ((*this)(hi) < x) {
    lo = hi;
    hi = lower_ + 2.0 * (hi - lower_);
    if (hi - lower_ > 1e12)
      throw std::domain_error("H inverse: argument at or beyond H(infinity), preimage unbounded");
  }
  const double ftol = 1e-12 * std::max(1.0, std::fabs(x));
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double val = (*this)(mid);
    if (std::fabs(val - x) <= ftol || hi - lo <= 1e-15 * std::max(1.0, std::fabs(mid)))
      return mid;
    (val < x ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

HTransform make_h_transform(const ProblemSpec& spec, const GrowthWitness* witness,
                            const DerivedConstants& constants, HWhich which,
                            HVariant variant, const ClassifyOptions& opt) {
  const int n = spec.n;
  if (which == HWhich::H12) {
    double m1 = constants.m1_cap;
    if (variant == HVariant::Standard) {
      if (!witness || !witness->upper1())
        throw std::invalid_argument("standard H12 needs the h1 witness");
      Expr h1 = *witness->h1, f2 = spec.f2;
      double invk2 = 1.0 / spec.k2;
      return HTransform(
          spec.central_a, 1.0 / spec.k1,
          [h1, f2, m1, invk2, n](double t) {
            return h1.eval(m1 * std::pow(f2.eval(t, n), invk2), n);
          },
          opt.h_subintervals);
    }
    double amp = m1 * (1.0 + constants.m1_plus.supremum);
    Expr f1 = spec.f1, f2 = spec.f2;
    double invk2 = 1.0 / spec.k2;
    return HTransform(
        spec.central_a, 1.0 / spec.k1,
        [f1, f2, amp, invk2, n](double t) {
          return f1.eval(amp * std::pow(f2.eval(t, n), invk2), n);
        },
        opt.h_subintervals);
  }

  double m2 = constants.m2_cap;
  if (variant == HVariant::Standard) {
    if (!witness || !witness->upper2())
      throw std::invalid_argument("standard H21 needs the h2 witness");
    Expr h2 = *witness->h2, f1 = spec.f1;
    double invk1 = 1.0 / spec.k1;
    return HTransform(
        spec.central_b, 1.0 / spec.k2,
        [h2, f1, m2, invk1, n](double t) {
          return h2.eval(m2 * std::pow(f1.eval(t, n), invk1), n);
        },
        opt.h_subintervals);
  }
  double amp = m2 * (1.0 + constants.m2_plus.supremum);
  Expr f1 = spec.f1, f2 = spec.f2;
  double invk1 = 1.0 / spec.k1;
  // this variant carries 1/k1 on the f2 side; override available
  double outer = opt.h21_variant_exponent.value_or(1.0 / spec.k1);
  return HTransform(
      spec.central_b, outer,
      [f1, f2, amp, invk1, n](double t) {
        return f2.eval(amp * std::pow(f1.eval(t, n), invk1), n);
      },
      opt.h_subintervals);
}

double h_transform(const ProblemSpec& spec, const GrowthWitness* witness,
                   const DerivedConstants& constants, HWhich which, double r,
                   HVariant variant, const ClassifyOptions& opt) {
  return make_h_transform(spec, witness, constants, which, variant, opt)(r);
}

double h_inverse(const ProblemSpec& spec, const GrowthWitness* witness,
                 const DerivedConstants& constants, HWhich which, double x,
                 HVariant variant, const ClassifyOptions& opt) {
  return make_h_transform(spec, witness, constants, which, variant, opt).inverse(x);
}

Eigen::ArrayXd p_integral_table(const KernelTable& table, PKind kind, const Expr& phi, int n) {
  const bool side12 = kind == PKind::Bar12 || kind == PKind::Under12;
  const Eigen::ArrayXd& q = side12 ? table.q1 : table.q2;
  Eigen::ArrayXd psi(table.grid.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] = phi.eval(1.0 + q[i], n);
  Eigen::ArrayXd fused = fused_weight_all(table, side12 ? Side::G2 : Side::G1, psi);
  double invk = side12 ? 1.0 / table.k1 : 1.0 / table.k2;
  return cumulative_integral(table.grid, fused.pow(invk));
}

double p_integral(const ProblemSpec& spec, const GrowthWitness& witness, PKind kind, double r,
                  int grid_n) {
  const std::optional<Expr>* phi = nullptr;
  switch (kind) {
    case PKind::Bar12:
      phi = &witness.phibar1;
      break;
    case PKind::Under12:
      phi = &witness.phiunder1;
      break;
    case PKind::Bar21:
      phi = &witness.phibar2;
      break;
    case PKind::Under21:
      phi = &witness.phiunder2;
      break;
  }
  if (!phi->has_value()) throw std::invalid_argument("p_integral: missing witness envelope");
  KernelTable table = build_kernel_table(spec, uniform_grid(r, grid_n));
  Eigen::ArrayXd vals = p_integral_table(table, kind, **phi, spec.n);
  return vals[vals.size() - 1];
}

HypothesisReport check_hypotheses(const ProblemSpec& spec, const GrowthWitness* witness,
                                  int sample_budget) {
  HypothesisReport rep;
  const int n = spec.n;
  const int budget = std::max(sample_budget, 8);
  auto guard = [&](const char* cond, auto&& fn) {
    try {
      fn();
    } catch (const ExprError& e) {
      rep.violations.push_back({cond, 0, 0, 0, 0, std::string("evaluation error: ") + e.what()});
    }
  };

  // (P1): p > 0, a >= 0 on radii samples
  guard("P1", [&] {
    std::vector<double> radii = log_spaced(1e-3, 1e3, budget);
    radii.insert(radii.begin(), 0.0);
    for (double r : radii) {
      double p1v = spec.p1.eval(r, n), p2v = spec.p2.eval(r, n);
      double a1v = spec.a1.eval(r, n), a2v = spec.a2.eval(r, n);
      // Exact zero is tolerated at the origin (removable degeneracy) and at
      // large radii, where a decaying weight underflows double precision.
      bool zero_ok = (r == 0.0 || r > 100.0);
      if (p1v < 0.0 || (p1v == 0.0 && !zero_ok))
        rep.violations.push_back({"P1", r, 0, p1v, 0, "p1 must be positive"});
      if (p2v < 0.0 || (p2v == 0.0 && !zero_ok))
        rep.violations.push_back({"P1", r, 0, p2v, 0, "p2 must be positive"});
      if (a1v < 0.0) rep.violations.push_back({"P1", r, 0, a1v, 0, "a1 must be nonnegative"});
      if (a2v < 0.0) rep.violations.push_back({"P1", r, 0, a2v, 0, "a2 must be nonnegative"});
      if (rep.violations.size() > 32) return;
    }
  });

  // (C1): f >= 0, nondecreasing, positive for positive arguments
  guard("C1", [&] {
    std::vector<double> args = log_spaced(1e-6, 1e6, budget);
    args.insert(args.begin(), 0.0);
    auto check_f = [&](const Expr& f, const char* name) {
      double prev1 = -1.0;
      bool first = true;
      for (double s : args) {
        double v = f.eval(s, n);
        if (v < 0.0) rep.violations.push_back({"C1", s, 0, v, 0, std::string(name) + " < 0"});
        if (s > 0.0 && !(v > 0.0))
          rep.violations.push_back({"C1", s, 0, v, 0, std::string(name) + " not positive"});
        if (!first && v < prev1 * (1.0 - kRelSlack) - 1e-12)
          rep.violations.push_back(
              {"C1", s, 0, v, prev1, std::string(name) + " not nondecreasing"});
        prev1 = v;
        first = false;
      }
    };
    check_f(spec.f1, "f1");
    check_f(spec.f2, "f2");
  });

  if (!witness) return rep;

  double f2a_k = std::pow(spec.f2.eval(spec.central_a, n), 1.0 / spec.k2);
  double f1b_k = std::pow(spec.f1.eval(spec.central_b, n), 1.0 / spec.k1);
  double cap1 = spec.central_b > f2a_k ? spec.central_b / f2a_k : 1.0;
  double cap2 = spec.central_a > f1b_k ? spec.central_a / f1b_k : 1.0;
  std::vector<double> ws = log_spaced(1.0, 1e4, budget);

  auto check_upper = [&](const char* cond, const Expr& f, const Expr& h, const Expr& phibar,
                         double cbar, double tmin, int k) {
    (void)k;
    std::vector<double> ts = log_spaced(std::max(tmin, 1e-12), std::max(tmin, 1e-12) * 1e4, budget);
    double prev_h = -1.0;
    bool first = true;
    for (double t : ts) {
      double hv = h.eval(t, n);
      if (!first && hv < prev_h * (1.0 - kRelSlack) - 1e-12)
        rep.violations.push_back({cond, t, 0, hv, prev_h, "h not nondecreasing"});
      prev_h = hv;
      first = false;
      for (double w : ws) {
        double lhs = f.eval(t * w, n);
        double rhs = cbar * hv * phibar.eval(w, n);
        if (lhs > rhs * (1.0 + kRelSlack) + 1e-12)
          rep.violations.push_back({cond, t, w, lhs, rhs, "f(t*w) exceeds cbar*h(t)*phibar(w)"});
        if (rep.violations.size() > 64) return;
      }
    }
  };
  auto check_lower = [&](const char* cond, const Expr& f, const Expr& phiunder, double cunder,
                         double m) {
    for (double w : ws) {
      double lhs = f.eval(m * w, n);
      double rhs = cunder * phiunder.eval(w, n);
      if (lhs < rhs * (1.0 - kRelSlack) - 1e-12)
        rep.violations.push_back({cond, m, w, lhs, rhs, "f(m*w) below cunder*phiunder(w)"});
      if (rep.violations.size() > 96) return;
    }
  };

  if (witness->upper1())
    guard("C2.1", [&] {
      check_upper("C2.1", spec.f1, *witness->h1, *witness->phibar1, *witness->cbar1,
                  cap1 * f2a_k, spec.k1);
    });
  if (witness->upper2())
    guard("C2.2", [&] {
      check_upper("C2.2", spec.f2, *witness->h2, *witness->phibar2, *witness->cbar2,
                  cap2 * f1b_k, spec.k2);
    });
  if (witness->lower1())
    guard("C3.1", [&] {
      check_lower("C3.1", spec.f1, *witness->phiunder1, *witness->cunder1,
                  std::min(spec.central_b, f2a_k));
    });
  if (witness->lower2())
    guard("C3.2", [&] {
      check_lower("C3.2", spec.f2, *witness->phiunder2, *witness->cunder2,
                  std::min(spec.central_a, f1b_k));
    });
  return rep;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Thm1Case1:
      return "Thm1-case1 bounded/bounded";
    case Verdict::Thm1Case2:
      return "Thm1-case2 large/large";
    case Verdict::Thm1Case3:
      return "Thm1-case3 bounded/large";
    case Verdict::Thm1Case4:
      return "Thm1-case4 large/bounded";
    case Verdict::Thm2i:
      return "Thm2-i bounded-with-sandwich";
    case Verdict::Thm2ii:
      return "Thm2-ii large/bounded";
    case Verdict::Thm2iii:
      return "Thm2-iii bounded/large";
    case Verdict::HypothesesNotMet:
      return "Hypotheses-not-met";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

Verdict decide_verdict(LimitVerdict h12, LimitVerdict h21, LimitVerdict pbar12,
                       LimitVerdict pbar21, LimitVerdict punder12, LimitVerdict punder21,
                       const StrictGates& gates) {
  using LV = LimitVerdict;
  if (h12 == LV::Divergent && h21 == LV::Divergent) {
    if (pbar12 == LV::Finite && pbar21 == LV::Finite) return Verdict::Thm1Case1;
    if (punder12 == LV::Divergent && punder21 == LV::Divergent) return Verdict::Thm1Case2;
    if (pbar12 == LV::Finite && punder21 == LV::Divergent) return Verdict::Thm1Case3;
    if (punder12 == LV::Divergent && pbar21 == LV::Finite) return Verdict::Thm1Case4;
    return Verdict::Inconclusive;
  }
  if (h12 == LV::Finite && h21 == LV::Finite) {
    if (pbar12 == LV::Finite && pbar21 == LV::Finite && gates.pbar12_lt_h12 &&
        gates.pbar21_lt_h21)
      return Verdict::Thm2i;
    return Verdict::Inconclusive;
  }
  if (h12 == LV::Divergent && h21 == LV::Finite) {
    if (punder12 == LV::Divergent && punder21 == LV::Finite && gates.punder21_lt_h21)
      return Verdict::Thm2ii;
    return Verdict::Inconclusive;
  }
  if (h12 == LV::Finite && h21 == LV::Divergent) {
    if (punder21 == LV::Divergent && pbar12 == LV::Finite && gates.pbar12_lt_h12)
      return Verdict::Thm2iii;
    return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;  // some H estimate inconclusive
}

namespace {

// conservative extrapolation-error bar: half the inferred tail
double extrap_error(const LimitEstimate& e) {
  if (!e.has_extrapolated) return 0.0;
  return 0.5 * std::fabs(e.extrapolated_limit - e.value_at_rmax) +
         1e-12 * std::max(1.0, std::fabs(e.extrapolated_limit));
}

bool strictly_less(const LimitEstimate& a, const LimitEstimate& b) {
  if (a.verdict != LimitVerdict::Finite || b.verdict != LimitVerdict::Finite) return false;
  return a.extrapolated_limit + extrap_error(a) < b.extrapolated_limit - extrap_error(b);
}

}  // namespace

ClassificationReport classify(const ProblemSpec& spec, const GrowthWitness* witness,
                              const ClassifyOptions& opt) {
  ClassificationReport rep;

  HypothesisReport probe = check_hypotheses(spec, nullptr, 24);
  if (!probe.ok()) {
    rep.verdict = Verdict::HypothesesNotMet;
    rep.hypothesis_violations = probe.violations;
    return rep;
  }

  const double r_budget = opt.limit.r_budget;
  KernelTable table = build_kernel_table(spec, uniform_grid(r_budget, opt.limit_grid_n));
  rep.constants = derive_constants_with_table(spec, table, r_budget, opt);
  if (rep.constants.hypothesis_violation) {
    rep.verdict = Verdict::HypothesesNotMet;
    rep.hypothesis_violations.push_back({"C1", 0, 0, 0, 0, rep.constants.violation_note});
    return rep;
  }

  GrowthWitness w = witness ? *witness : GrowthWitness{};
  if (!w.lower1() && rep.constants.m1_low >= 1.0) {
    w.phiunder1 = spec.f1;
    w.cunder1 = 1.0;
    rep.remark_lower_default_1 = true;
  }
  if (!w.lower2() && rep.constants.m2_low >= 1.0) {
    w.phiunder2 = spec.f2;
    w.cunder2 = 1.0;
    rep.remark_lower_default_2 = true;
  }
  rep.effective_witness = w;

  auto mplus_usable = [](const MPlusEstimate& m) {
    return m.tail.verdict == LimitVerdict::Finite && m.supremum > 0.0;
  };
  bool var1 = !w.upper1() && mplus_usable(rep.constants.m1_plus);
  bool var2 = !w.upper2() && mplus_usable(rep.constants.m2_plus);
  rep.remark_upper_variant = (var1 && var2) ? 'c' : var1 ? 'a' : var2 ? 'b' : 0;

  auto h_estimate = [&](HWhich which, bool have_witness, bool variant,
                        const char* name) -> LimitEstimate {
    LimitEstimate out;
    if (!have_witness && !variant) {
      if (rep.blocking.empty())
        rep.blocking = std::string(name) + ": no growth witness and M+ not usable";
      return out;
    }
    try {
      HTransform h = make_h_transform(spec, witness, rep.constants, which,
                                      variant ? HVariant::MPlus : HVariant::Standard, opt);
      LimitOptions lo = opt.limit;
      while (lo.r0 <= h.lower()) lo.r0 *= 2.0;
      // Accumulate octave-by-octave so tail increments are quadratures of
      // their own interval, not differences of near-equal totals.
      double acc_r = h.lower(), acc_v = 0.0;
      return limit_estimate(
          [&](double r) {
            if (r < acc_r) {
              acc_r = h.lower();
              acc_v = 0.0;
            }
            acc_v += h.between(acc_r, r);
            acc_r = r;
            return acc_v;
          },
          lo);
    } catch (const std::exception& e) {
      if (rep.blocking.empty()) rep.blocking = std::string(name) + ": " + e.what();
      return out;
    }
  };
  rep.h_12_inf = h_estimate(HWhich::H12, w.upper1(), var1, "H12");
  rep.h_21_inf = h_estimate(HWhich::H21, w.upper2(), var2, "H21");

  auto p_estimate = [&](PKind kind, const std::optional<Expr>& phi,
                        const char* name) -> LimitEstimate {
    LimitEstimate out;
    if (!phi) {
      if (rep.blocking.empty()) rep.blocking = std::string(name) + ": envelope missing";
      return out;
    }
    try {
      Eigen::ArrayXd vals = p_integral_table(table, kind, *phi, spec.n);
      return limit_estimate([&](double r) { return interp(table.grid, vals, r); }, opt.limit);
    } catch (const std::exception& e) {
      if (rep.blocking.empty()) rep.blocking = std::string(name) + ": " + e.what();
      return out;
    }
  };
  rep.p_bar_12 = p_estimate(PKind::Bar12, w.phibar1, "Pbar12");
  rep.p_bar_21 = p_estimate(PKind::Bar21, w.phibar2, "Pbar21");
  rep.p_under_12 = p_estimate(PKind::Under12, w.phiunder1, "Punder12");
  rep.p_under_21 = p_estimate(PKind::Under21, w.phiunder2, "Punder21");

  StrictGates gates;
  gates.pbar12_lt_h12 = strictly_less(rep.p_bar_12, rep.h_12_inf);
  gates.pbar21_lt_h21 = strictly_less(rep.p_bar_21, rep.h_21_inf);
  gates.punder21_lt_h21 = strictly_less(rep.p_under_21, rep.h_21_inf);

  rep.verdict = decide_verdict(rep.h_12_inf.verdict, rep.h_21_inf.verdict, rep.p_bar_12.verdict,
                               rep.p_bar_21.verdict, rep.p_under_12.verdict,
                               rep.p_under_21.verdict, gates);
  if (rep.verdict == Verdict::Inconclusive && rep.blocking.empty()) {
    auto name_first_inconclusive = [&]() -> std::string {
      if (rep.h_12_inf.verdict == LimitVerdict::Inconclusive) return "H12";
      if (rep.h_21_inf.verdict == LimitVerdict::Inconclusive) return "H21";
      if (rep.p_bar_12.verdict == LimitVerdict::Inconclusive) return "Pbar12";
      if (rep.p_bar_21.verdict == LimitVerdict::Inconclusive) return "Pbar21";
      if (rep.p_under_12.verdict == LimitVerdict::Inconclusive) return "Punder12";
      if (rep.p_under_21.verdict == LimitVerdict::Inconclusive) return "Punder21";
      return "decision table: no theorem case matched";
    };
    rep.blocking = name_first_inconclusive();
  }
  return rep;
}

SandwichResult sandwich_check(const ProblemSpec& spec, const ClassificationReport& report,
                              const SolutionProfile& profile, const ClassifyOptions& opt) {
  SandwichResult res;
  bool up1 = false, up2 = false, lo1 = false, lo2 = false;
  switch (report.verdict) {
    case Verdict::Thm2i:
      up1 = up2 = lo1 = lo2 = true;
      break;
    case Verdict::Thm1Case1:
      up1 = up2 = true;
      break;
    case Verdict::Thm1Case2:
      lo1 = lo2 = true;
      break;
    case Verdict::Thm1Case3:
    case Verdict::Thm2iii:
      up1 = lo2 = true;
      break;
    case Verdict::Thm1Case4:
    case Verdict::Thm2ii:
      lo1 = up2 = true;
      break;
    default:
      return res;  // not applicable
  }
  const GrowthWitness& w = report.effective_witness;
  up1 = up1 && w.upper1();
  up2 = up2 && w.upper2();
  lo1 = lo1 && w.lower1();
  lo2 = lo2 && w.lower2();
  if (!(up1 || up2 || lo1 || lo2)) return res;
  res.applicable = true;

  KernelTable fine = build_kernel_table(spec, profile.grid);
  // coarse table (every other node) for a quadrature-error estimate
  const Eigen::Index nfine = profile.grid.size();
  Eigen::ArrayXd coarse_grid((nfine + 1) / 2);
  for (Eigen::Index i = 0; i < coarse_grid.size(); ++i) coarse_grid[i] = profile.grid[2 * i];
  KernelTable coarse = build_kernel_table(spec, coarse_grid);

  auto quad_err = [&](PKind kind, const Expr& phi) {
    Eigen::ArrayXd pf = p_integral_table(fine, kind, phi, spec.n);
    Eigen::ArrayXd pc = p_integral_table(coarse, kind, phi, spec.n);
    double err = 0.0;
    for (Eigen::Index i = 0; i < pc.size(); ++i)
      err = std::max(err, std::fabs(pc[i] - pf[2 * i]));
    return std::make_pair(pf, err);
  };

  auto record = [&](double violation, double r, double tol) {
    res.tolerance = std::max(res.tolerance, tol);
    if (violation > tol) {
      res.pass = false;
      if (violation > res.worst_violation) {
        res.worst_violation = violation;
        res.worst_r = r;
      }
    } else if (res.pass && violation > res.worst_violation) {
      res.worst_violation = violation;
      res.worst_r = r;
    }
  };

  double base_err = profile.inter_resolution_delta + profile.sup_norm_delta;

  auto lower_side = [&](bool enabled, PKind kind, const Expr& phi, double cunder, int k,
                        double center, const Eigen::ArrayXd& u) {
    if (!enabled) return;
    auto [pv, perr] = quad_err(kind, phi);
    double cu = std::pow(cunder, 1.0 / k);
    double tol = 10.0 * (cu * perr + base_err + 1e-9);
    for (Eigen::Index i = 0; i < u.size(); ++i)
      record(center + cu * pv[i] - u[i], profile.grid[i], tol);
  };
  lower_side(lo1, PKind::Under12, lo1 ? *w.phiunder1 : Expr(spec.f1), lo1 ? *w.cunder1 : 1.0,
             spec.k1, spec.central_a, profile.u1);
  lower_side(lo2, PKind::Under21, lo2 ? *w.phiunder2 : Expr(spec.f2), lo2 ? *w.cunder2 : 1.0,
             spec.k2, spec.central_b, profile.u2);

  auto upper_side = [&](bool enabled, PKind kind, const Expr& phi, double cbar, int k,
                        HWhich which, bool variant, const Eigen::ArrayXd& u) {
    if (!enabled) return;
    auto [pv, perr] = quad_err(kind, phi);
    double cb = std::pow(cbar, 1.0 / k);
    HTransform h = make_h_transform(
        spec, &report.effective_witness, report.constants, which,
        variant ? HVariant::MPlus : HVariant::Standard, opt);
    // tabulate H once on [lower, r_top] and invert by interpolation
    double top_arg = cb * pv[pv.size() - 1];
    double r_top = h.inverse(top_arg);
    const int m = 2048;
    Eigen::ArrayXd rg(m + 1), hg(m + 1);
    for (int i = 0; i <= m; ++i) {
      rg[i] = h.lower() + (r_top + 1.0 - h.lower()) * double(i) / m;
      hg[i] = h(rg[i]);
    }
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      double arg = cb * pv[i];
      double env = interp(hg, rg, arg);  // inverse via the monotone table
      // translate the P quadrature error through the inverse slope
      double slope = (interp(hg, rg, arg + 1e-6 * std::max(1.0, arg)) - env) /
                     (1e-6 * std::max(1.0, arg));
      double tol = 10.0 * (cb * perr * std::max(1.0, slope) + base_err + 1e-9);
      record(u[i] - env, profile.grid[i], tol);
    }
  };
  bool v1 = report.remark_upper_variant == 'a' || report.remark_upper_variant == 'c';
  bool v2 = report.remark_upper_variant == 'b' || report.remark_upper_variant == 'c';
  upper_side(up1, PKind::Bar12, up1 ? *w.phibar1 : Expr(spec.f1), up1 ? *w.cbar1 : 1.0, spec.k1,
             HWhich::H12, v1, profile.u1);
  upper_side(up2, PKind::Bar21, up2 ? *w.phibar2 : Expr(spec.f2), up2 ? *w.cbar2 : 1.0, spec.k2,
             HWhich::H21, v2, profile.u2);

  return res;
}

}  // namespace radhess
