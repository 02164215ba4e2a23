#ifndef RADHESS_CONFIG_HPP
#define RADHESS_CONFIG_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "radhess/problem.hpp"

namespace radhess {

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(const std::string& msg, int ln = 0) : std::runtime_error(msg), line(ln) {}
};

struct Numerics {
  double rmax = 10.0;
  int grid_n = 1024;
  double tol = 1e-8;
  int max_iter = 200;
  int refine_cap = 6;
  double limit_r0 = 1.0;
  double limit_budget = 1024.0;
};

// Line-oriented `key = value` document with [problem], [witness] and
// [numerics] sections; `#` starts a comment; function values are expressions
// in `t`.
struct ConfigDocument {
  ProblemSpec problem;
  std::optional<GrowthWitness> witness;
  Numerics numerics;
};

ConfigDocument parse_config(std::istream& in, const std::string& name);
ConfigDocument load_config(const std::string& path);

}  // namespace radhess

#endif
