#ifndef RADHESS_COMMANDS_HPP
#define RADHESS_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "radhess/config.hpp"

namespace radhess::cli {

// Exit-code contract: 0 success, 1 fault or exhausted budget,
// 2 inconclusive classification, 3 hypothesis violations.
constexpr int kOk = 0;
constexpr int kFault = 1;
constexpr int kInconclusive = 2;
constexpr int kViolations = 3;

struct RunOptions {
  std::string out_dir = ".";
  std::optional<double> rmax;
  std::optional<int> grid_n;
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<double> limit_budget;
  // verify inputs: closed-form profiles, optionally with their derivatives
  std::string u1, u2, du1, ddu1, du2, ddu2;
};

int run_solve(const ConfigDocument& config, const RunOptions& opt, std::ostream& log);
int run_classify(const ConfigDocument& config, const RunOptions& opt, std::ostream& log);
int run_verify(const ConfigDocument& config, const RunOptions& opt, std::ostream& log);
int run_hypotheses(const ConfigDocument& config, const RunOptions& opt, std::ostream& log);

}  // namespace radhess::cli

#endif
