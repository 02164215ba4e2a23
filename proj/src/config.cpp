#include "radhess/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace radhess {

namespace {

struct RawEntry {
  std::string value;
  int line;
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Section {
 public:
  std::map<std::string, RawEntry> entries;
  std::string name;

  const RawEntry* find(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  }

  std::string require(const std::string& key) const {
    const RawEntry* e = find(key);
    if (!e)
      throw ConfigError("missing mandatory key '" + key + "' in [" + name + "] section");
    return e->value;
  }

  double number(const std::string& key) const {
    require(key);
    const RawEntry* e = find(key);
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(e->value, &used);
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': not a number: '" + e->value + "'", e->line);
    }
    if (used != e->value.size())
      throw ConfigError("key '" + key + "': trailing characters in number", e->line);
    return v;
  }

  int integer(const std::string& key) const {
    double v = number(key);
    if (v != std::floor(v)) {
      const RawEntry* e = find(key);
      throw ConfigError("key '" + key + "': expected an integer", e->line);
    }
    return static_cast<int>(v);
  }

  Expr expression(const std::string& key) const {
    require(key);
    const RawEntry* e = find(key);
    try {
      return Expr::parse(e->value);
    } catch (const ExprError& err) {
      throw ConfigError("key '" + key + "' (line " + std::to_string(e->line) +
                            "): " + err.what(),
                        e->line);
    }
  }
};

// Coarse positivity/monotonicity probe on a valid-looking spec; full checks
// live in the hypothesis checker.
void probe_problem(const ProblemSpec& spec, double rmax) {
  const int samples = 33;
  for (int i = 0; i <= samples; ++i) {
    double r = rmax * double(i) / samples;
    // At r=0 only nonnegativity is required; a weight vanishing at the origin
    // is a removable degeneracy, not a sign violation.
    if (!(spec.p1.eval(r, spec.n) > 0.0) && !(r == 0.0 && spec.p1.eval(r, spec.n) == 0.0))
      throw ConfigError("positivity probe: p1 is not positive at r=" + std::to_string(r) +
                        " (condition P1)");
    if (!(spec.p2.eval(r, spec.n) > 0.0) && !(r == 0.0 && spec.p2.eval(r, spec.n) == 0.0))
      throw ConfigError("positivity probe: p2 is not positive at r=" + std::to_string(r) +
                        " (condition P1)");
    if (spec.a1.eval(r, spec.n) < 0.0)
      throw ConfigError("positivity probe: a1 is negative at r=" + std::to_string(r) +
                        " (condition P1)");
    if (spec.a2.eval(r, spec.n) < 0.0)
      throw ConfigError("positivity probe: a2 is negative at r=" + std::to_string(r) +
                        " (condition P1)");
  }
  double prev1 = -1.0, prev2 = -1.0;
  for (int i = 0; i <= samples; ++i) {
    double s = 1e-3 * std::pow(1e6, double(i) / samples);
    double v1 = spec.f1.eval(s, spec.n), v2 = spec.f2.eval(s, spec.n);
    if (v1 < 0.0 || v2 < 0.0 || v1 < prev1 * (1.0 - 1e-9) || v2 < prev2 * (1.0 - 1e-9))
      throw ConfigError("probe: f1/f2 must be nonnegative and nondecreasing (condition C1)");
    prev1 = v1;
    prev2 = v2;
  }
}

}  // namespace

ConfigDocument parse_config(std::istream& in, const std::string& name) {
  std::map<std::string, Section> sections;
  std::string current = "problem";
  sections["problem"].name = "problem";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']')
        throw ConfigError(name + ": malformed section header", lineno);
      current = trim(text.substr(1, text.size() - 2));
      if (current != "problem" && current != "witness" && current != "numerics")
        throw ConfigError(name + ": unknown section [" + current + "]", lineno);
      sections[current].name = current;
      continue;
    }
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ": expected 'key = value'", lineno);
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(name + ": empty key or value", lineno);
    Section& sec = sections[current];
    if (sec.entries.count(key))
      throw ConfigError(name + ": duplicate key '" + key + "'", lineno);
    sec.entries[key] = {value, lineno};
  }

  ConfigDocument doc;
  const Section& prob = sections["problem"];
  ProblemSpec& spec = doc.problem;
  for (const char* key : {"N", "k1", "k2", "a1", "a2", "p1", "p2", "f1", "f2", "a", "b"})
    prob.require(key);
  spec.n = prob.integer("N");
  spec.k1 = prob.integer("k1");
  spec.k2 = prob.integer("k2");
  if (spec.n < 3) throw ConfigError("N must be >= 3");
  if (spec.k1 < 1 || spec.k1 > spec.n || spec.k2 < 1 || spec.k2 > spec.n)
    throw ConfigError("k1, k2 must lie in {1..N}");
  spec.a1 = prob.expression("a1");
  spec.a2 = prob.expression("a2");
  spec.p1 = prob.expression("p1");
  spec.p2 = prob.expression("p2");
  spec.f1 = prob.expression("f1");
  spec.f2 = prob.expression("f2");
  spec.central_a = prob.number("a");
  spec.central_b = prob.number("b");
  if (!(spec.central_a > 0.0) || !(spec.central_b > 0.0))
    throw ConfigError("central values a, b must be positive");

  if (sections.count("numerics")) {
    const Section& num = sections["numerics"];
    Numerics& nm = doc.numerics;
    if (num.find("rmax")) nm.rmax = num.number("rmax");
    if (num.find("grid_n")) nm.grid_n = num.integer("grid_n");
    if (num.find("tol")) nm.tol = num.number("tol");
    if (num.find("max_iter")) nm.max_iter = num.integer("max_iter");
    if (num.find("refine_cap")) nm.refine_cap = num.integer("refine_cap");
    if (num.find("limit_r0")) nm.limit_r0 = num.number("limit_r0");
    if (num.find("limit_budget")) nm.limit_budget = num.number("limit_budget");
    if (!(nm.rmax > 0.0) || nm.grid_n < 2 || !(nm.tol > 0.0))
      throw ConfigError("invalid [numerics] values");
  }

  if (sections.count("witness")) {
    const Section& wit = sections["witness"];
    GrowthWitness w;
    auto opt_expr = [&](const char* key) -> std::optional<Expr> {
      if (!wit.find(key)) return std::nullopt;
      return wit.expression(key);
    };
    auto opt_num = [&](const char* key) -> std::optional<double> {
      if (!wit.find(key)) return std::nullopt;
      return wit.number(key);
    };
    w.h1 = opt_expr("h1");
    w.h2 = opt_expr("h2");
    w.phibar1 = opt_expr("phibar1");
    w.phibar2 = opt_expr("phibar2");
    w.phiunder1 = opt_expr("phiunder1");
    w.phiunder2 = opt_expr("phiunder2");
    w.cbar1 = opt_num("cbar1");
    w.cbar2 = opt_num("cbar2");
    w.cunder1 = opt_num("cunder1");
    w.cunder2 = opt_num("cunder2");
    doc.witness = std::move(w);
  }

  probe_problem(spec, doc.numerics.rmax);
  return doc;
}

ConfigDocument load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, path);
}

}  // namespace radhess
