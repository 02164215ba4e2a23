#ifndef RADHESS_CLASSIFY_HPP
#define RADHESS_CLASSIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radhess/iteration.hpp"
#include "radhess/kernels.hpp"
#include "radhess/limits.hpp"
#include "radhess/problem.hpp"

namespace radhess {

// M1, M2 (>= 1), m1, m2 (> 0) from the central values, plus the
// Remark-improvement suprema M1+, M2+.
struct DerivedConstants {
  double m1_cap = 1.0, m2_cap = 1.0;
  double m1_low = 0.0, m2_low = 0.0;
  MPlusEstimate m1_plus, m2_plus;
  bool hypothesis_violation = false;
  std::string violation_note;
};

struct ClassifyOptions {
  LimitOptions limit;
  int limit_grid_n = 1 << 15;  // nodes of the [0, r_budget] kernel table
  int h_subintervals = 2048;   // composite-trapezoid panels per H evaluation
  // Exponent on f2 in the variant-b H21 denominator. The printed formula
  // uses 1/k1 there (where the standard H21 carries 1/k2 on the h2 side);
  // we follow the printed form and let callers override.
  std::optional<double> h21_variant_exponent;
};

enum class HWhich { H12, H21 };
enum class HVariant { Standard, MPlus };

// H as a reusable monotone functor with its inverse.
class HTransform {
 public:
  HTransform(double lower, double outer_exponent_k, std::function<double(double)> denom,
             int subintervals);

  double operator()(double r) const;  // quadrature of 1/denom^(1/k) over [lower, r]

  // Same quadrature over [r0, r1]; lets callers accumulate tail increments
  // without cancellation between two large near-equal totals.
  double between(double r0, double r1) const;

  // r with |H(r) - x| <= 1e-12 * max(1, |x|), by bracketing + bisection.
  // h_infinity_hint, when finite, bounds the admissible x.
  double inverse(double x) const;

  double lower() const { return lower_; }

 private:
  double lower_;
  double inv_k_;
  std::function<double(double)> denom_;
  int subintervals_;
};

HTransform make_h_transform(const ProblemSpec& spec, const GrowthWitness* witness,
                            const DerivedConstants& constants, HWhich which,
                            HVariant variant, const ClassifyOptions& opt = {});

double h_transform(const ProblemSpec& spec, const GrowthWitness* witness,
                   const DerivedConstants& constants, HWhich which, double r,
                   HVariant variant = HVariant::Standard, const ClassifyOptions& opt = {});

double h_inverse(const ProblemSpec& spec, const GrowthWitness* witness,
                 const DerivedConstants& constants, HWhich which, double x,
                 HVariant variant = HVariant::Standard, const ClassifyOptions& opt = {});

enum class PKind { Bar12, Under12, Bar21, Under21 };

// Cumulative samples of the nested P integral on the table's grid, with the
// supplied envelope function applied to 1 + inner integral.
Eigen::ArrayXd p_integral_table(const KernelTable& table, PKind kind, const Expr& phi, int n);

double p_integral(const ProblemSpec& spec, const GrowthWitness& witness, PKind kind, double r,
                  int grid_n = 1 << 12);

struct Violation {
  std::string condition;  // "P1", "C1", "C2.1", "C3.2", ...
  double t = 0.0, w = 0.0, lhs = 0.0, rhs = 0.0;
  std::string detail;
};

struct HypothesisReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

HypothesisReport check_hypotheses(const ProblemSpec& spec, const GrowthWitness* witness,
                                  int sample_budget = 40);

enum class Verdict {
  Thm1Case1,
  Thm1Case2,
  Thm1Case3,
  Thm1Case4,
  Thm2i,
  Thm2ii,
  Thm2iii,
  HypothesesNotMet,
  Inconclusive,
};

const char* to_string(Verdict v);

// Strict-inequality gates resolved from extrapolated limits.
struct StrictGates {
  bool pbar12_lt_h12 = false;
  bool pbar21_lt_h21 = false;
  bool punder21_lt_h21 = false;
};

// Pure decision table over the six estimates; total (exactly one verdict for
// every combination).
Verdict decide_verdict(LimitVerdict h12, LimitVerdict h21, LimitVerdict pbar12,
                       LimitVerdict pbar21, LimitVerdict punder12, LimitVerdict punder21,
                       const StrictGates& gates);

struct ClassificationReport {
  DerivedConstants constants;
  LimitEstimate p_bar_12, p_bar_21, p_under_12, p_under_21, h_12_inf, h_21_inf;
  Verdict verdict = Verdict::Inconclusive;
  std::string blocking;            // which estimate blocked, when Inconclusive
  char remark_upper_variant = 0;   // 0 none, 'a', 'b' or 'c'
  bool remark_lower_default_1 = false;  // phiunder1 = f1 autofill (m1 >= 1)
  bool remark_lower_default_2 = false;
  GrowthWitness effective_witness;      // after Remark autofill
  std::vector<Violation> hypothesis_violations;
};

DerivedConstants derive_constants(const ProblemSpec& spec, double r_max,
                                  const ClassifyOptions& opt = {});

ClassificationReport classify(const ProblemSpec& spec, const GrowthWitness* witness,
                              const ClassifyOptions& opt = {});

struct SandwichResult {
  bool pass = true;
  bool applicable = false;
  double worst_violation = 0.0;
  double worst_r = 0.0;
  double tolerance = 0.0;
};

// Envelope check of the solved profile against the bounds the verdict
// asserts: lower a + cunder^(1/k) Punder(r) where a lower envelope applies,
// upper Hinv(cbar^(1/k) Pbar(r)) where an upper one does.
SandwichResult sandwich_check(const ProblemSpec& spec, const ClassificationReport& report,
                              const SolutionProfile& profile, const ClassifyOptions& opt = {});

}  // namespace radhess

#endif
