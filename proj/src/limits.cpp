#include "radhess/limits.hpp"

#include <algorithm>
#include <cmath>

namespace radhess {

const char* to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::Finite:
      return "Finite";
    case LimitVerdict::Divergent:
      return "Divergent";
    case LimitVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

LimitEstimate limit_estimate(const std::function<double(double)>& g, const LimitOptions& opt) {
  LimitEstimate est;
  double r = opt.r0;
  while (r <= opt.r_budget * (1.0 + 1e-12)) {
    est.evidence.push_back(g(r));
    r *= 2.0;
  }
  const int nvals = static_cast<int>(est.evidence.size());
  if (nvals == 0) return est;
  est.value_at_rmax = est.evidence.back();

  const int nincs = nvals - 1;
  // Need `doublings` ratios, i.e. doublings + 1 increments.
  if (nincs < opt.doublings + 1) return est;

  std::vector<double> inc(nincs);
  for (int j = 0; j < nincs; ++j) inc[j] = est.evidence[j + 1] - est.evidence[j];

  double scale = std::max(1.0, std::fabs(est.value_at_rmax));
  // All-tail increments negligible: the integral has already settled.
  bool settled = true;
  for (int j = nincs - opt.doublings - 1; j < nincs; ++j)
    if (std::fabs(inc[j]) > 1e-13 * scale) settled = false;
  if (settled) {
    est.verdict = LimitVerdict::Finite;
    est.extrapolated_limit = est.value_at_rmax;
    est.has_extrapolated = true;
    return est;
  }

  bool finite = true, divergent = true;
  double last_ratio = 0.0;
  for (int j = nincs - opt.doublings - 1; j + 1 < nincs; ++j) {
    double d0 = inc[j], d1 = inc[j + 1];
    if (d0 <= 0.0) {
      finite = d1 <= 1e-13 * scale && finite;
      divergent = false;
      continue;
    }
    double ratio = d1 / d0;
    last_ratio = ratio;
    if (!(ratio < opt.decay_ratio + opt.ratio_slack)) finite = false;
    if (!(d1 >= d0 * (1.0 - opt.ratio_slack))) divergent = false;
  }

  if (finite) {
    est.verdict = LimitVerdict::Finite;
    double rho = std::clamp(last_ratio, 0.0, 0.9);
    est.extrapolated_limit = est.value_at_rmax + inc.back() * rho / (1.0 - rho);
    est.has_extrapolated = true;
  } else if (divergent) {
    est.verdict = LimitVerdict::Divergent;
  }
  return est;
}

}  // namespace radhess
