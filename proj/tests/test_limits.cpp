#include <doctest.h>

#include <cmath>

#include "radhess/limits.hpp"

using namespace radhess;

TEST_CASE("integral of t^-2 from 1: finite, extrapolates to 1") {
  LimitEstimate e = limit_estimate([](double r) { return 1.0 - 1.0 / r; });
  CHECK(e.verdict == LimitVerdict::Finite);
  REQUIRE(e.has_extrapolated);
  CHECK(std::fabs(e.extrapolated_limit - 1.0) < 1e-3);
}

TEST_CASE("integral of t^-1 from 1: divergent") {
  LimitEstimate e = limit_estimate([](double r) { return std::log(r); });
  CHECK(e.verdict == LimitVerdict::Divergent);
}

TEST_CASE("slowly decaying tail stays inconclusive") {
  // increments shrink by 1/sqrt(2) per doubling: neither clearly finite
  // (ratio > 0.52) nor non-decreasing
  LimitEstimate e = limit_estimate([](double r) { return 2.0 * (1.0 - 1.0 / std::sqrt(r)); });
  CHECK(e.verdict == LimitVerdict::Inconclusive);
}

TEST_CASE("settled tail short-circuits to finite") {
  LimitEstimate e = limit_estimate([](double r) { return r < 2.0 ? 0.0 : 5.0; });
  CHECK(e.verdict == LimitVerdict::Finite);
  CHECK(e.extrapolated_limit == 5.0);
}

TEST_CASE("too small a budget is inconclusive") {
  LimitOptions opt;
  opt.r_budget = 8.0;  // only 3 increments, need doublings+1 = 4
  LimitEstimate e = limit_estimate([](double r) { return 1.0 - 1.0 / r; }, opt);
  CHECK(e.verdict == LimitVerdict::Inconclusive);
  CHECK(e.evidence.size() == 4);
}

TEST_CASE("evidence records the dyadic samples and the last value") {
  LimitEstimate e = limit_estimate([](double r) { return std::log(r); });
  REQUIRE(e.evidence.size() == 11);  // r = 1..1024
  CHECK(e.value_at_rmax == doctest::Approx(std::log(1024.0)));
  CHECK(e.evidence.front() == 0.0);
}
