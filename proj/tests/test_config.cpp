#include <doctest.h>

#include <sstream>

#include "radhess/config.hpp"

using namespace radhess;

namespace {

ConfigDocument parse_str(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

const char* kMinimal =
    "[problem]\n"
    "N = 3\nk1 = 1\nk2 = 1\n"
    "a1 = 0\na2 = 0\n"
    "p1 = exp(-t)\np2 = exp(-t)\n"
    "f1 = t\nf2 = t\n"
    "a = 1\nb = 1\n";

}  // namespace

TEST_CASE("minimal document parses with default numerics") {
  ConfigDocument doc = parse_str(kMinimal);
  CHECK(doc.problem.n == 3);
  CHECK(doc.problem.k1 == 1);
  CHECK(doc.problem.f1.eval(2.0, 3) == 2.0);
  CHECK(!doc.witness);
  CHECK(doc.numerics.rmax == 10.0);
  CHECK(doc.numerics.grid_n == 1024);
}

TEST_CASE("witness and numerics sections") {
  ConfigDocument doc = parse_str(std::string(kMinimal) +
                                 "[witness]\nh1 = t\nphibar1 = t\ncbar1 = 1\n"
                                 "[numerics]\nrmax = 64\ngrid_n = 256\ntol = 1e-10\n");
  REQUIRE(doc.witness);
  CHECK(doc.witness->upper1());
  CHECK(!doc.witness->upper2());
  CHECK(doc.numerics.rmax == 64.0);
  CHECK(doc.numerics.grid_n == 256);
  CHECK(doc.numerics.tol == 1e-10);
}

TEST_CASE("missing mandatory key names the key") {
  std::string text(kMinimal);
  text.replace(text.find("k2 = 1\n"), 7, "");
  try {
    parse_str(text);
    FAIL("expected a missing-key error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("k2") != std::string::npos);
  }
}

TEST_CASE("duplicate key is rejected with its line number") {
  try {
    parse_str(std::string(kMinimal) + "p1 = 1\n");
    FAIL("expected a duplicate-key error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("p1") != std::string::npos);
    CHECK(e.line == 13);
  }
}

TEST_CASE("expression errors carry the config line") {
  std::string text(kMinimal);
  text.replace(text.find("f1 = t\n"), 7, "f1 = t+*2\n");
  try {
    parse_str(text);
    FAIL("expected an expression error");
  } catch (const ConfigError& e) {
    CHECK(e.line == 9);
  }
}

TEST_CASE("positivity probe rejects a negative weight") {
  std::string text(kMinimal);
  text.replace(text.find("p1 = exp(-t)\n"), 13, "p1 = -1\n");
  try {
    parse_str(text);
    FAIL("expected a probe rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("P1") != std::string::npos);
  }
}

TEST_CASE("probe rejects a decreasing nonlinearity") {
  std::string text(kMinimal);
  text.replace(text.find("f2 = t\n"), 7, "f2 = 1/(1+t)\n");
  try {
    parse_str(text);
    FAIL("expected a probe rejection");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("C1") != std::string::npos);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  ConfigDocument doc = parse_str("# leading comment\n\n" + std::string(kMinimal) +
                                 "# trailing\n");
  CHECK(doc.problem.n == 3);
}
