#ifndef RADHESS_LIMITS_HPP
#define RADHESS_LIMITS_HPP

#include <functional>
#include <vector>

namespace radhess {

enum class LimitVerdict { Finite, Divergent, Inconclusive };

const char* to_string(LimitVerdict v);

// Finite/divergent decision for a nondecreasing one-parameter integral
// g(r) as r -> infinity, from samples at geometrically spaced radii.
struct LimitEstimate {
  double value_at_rmax = 0.0;
  LimitVerdict verdict = LimitVerdict::Inconclusive;
  std::vector<double> evidence;          // g(r0 * 2^j), j = 0..J
  double extrapolated_limit = 0.0;       // meaningful when Finite
  bool has_extrapolated = false;
};

struct LimitOptions {
  double r0 = 1.0;
  double r_budget = 1024.0;
  // Finite: the last `doublings` increment ratios stay below
  // decay_ratio + ratio_slack. Divergent: increments non-decreasing
  // (within slack) over the same window.
  double decay_ratio = 0.5;
  double ratio_slack = 0.02;
  int doublings = 3;
};

// Samples g at r0*2^j up to r_budget and applies the decay-ratio rules.
// Returns Inconclusive when the budget allows fewer than doublings+1
// increments.
LimitEstimate limit_estimate(const std::function<double(double)>& g,
                             const LimitOptions& opt = {});

}  // namespace radhess

#endif
