#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "radhess/output.hpp"

using namespace radhess;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(std::string("/tmp/radhess_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv numbers: 12 significant digits, stable format") {
  CHECK(format_csv_number(1.0) == "1.00000000000e+00");
  CHECK(format_csv_number(0.0) == "0.00000000000e+00");
  CHECK(format_csv_number(-12345.678) == "-1.23456780000e+04");
  CHECK(format_csv_number(1e150) == "1.00000000000e+150");
  CHECK(format_csv_number(2.5) == format_csv_number(2.5));
}

TEST_CASE("csv writer emits a header and one row per node") {
  TempFile f("out.csv");
  Eigen::ArrayXd r = Eigen::ArrayXd::LinSpaced(3, 0.0, 2.0);
  Eigen::ArrayXd u = r * r;
  write_csv(f.path, {{"r", &r}, {"u", &u}});
  std::string text = slurp(f.path);
  CHECK(text.substr(0, 4) == "r,u\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  CHECK(text.find("4.00000000000e+00") != std::string::npos);
  // byte-stable across runs
  write_csv(f.path, {{"r", &r}, {"u", &u}});
  CHECK(slurp(f.path) == text);
}

TEST_CASE("svg plot: single root element, one polyline per series") {
  TempFile f("plot.svg");
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(64, 0.0, 5.0);
  Eigen::ArrayXd a = x + 1.0, b = 2.0 * x + 1.0;
  write_svg_plot(f.path, x, {{"u1", &a}, {"u2", &b}}, "profiles");
  std::string text = slurp(f.path);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.rfind("</svg>") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '<') ==
        std::count(text.begin(), text.end(), '>'));
  size_t first = text.find("<polyline");
  REQUIRE(first != std::string::npos);
  CHECK(text.find("<polyline", first + 1) != std::string::npos);
  CHECK(text.find("u1") != std::string::npos);
  CHECK(text.find("log") == std::string::npos);  // small values: linear axis
}

TEST_CASE("svg plot switches to a log axis for huge values") {
  TempFile f("plot_log.svg");
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(64, 0.0, 5.0);
  Eigen::ArrayXd a = (3.0 * x).exp() + 1.0;  // tops out near e^15 > 1e6
  write_svg_plot(f.path, x, {{"u", &a}}, "large solution");
  std::string text = slurp(f.path);
  CHECK(text.find("log") != std::string::npos);
}
