#ifndef RADHESS_OUTPUT_HPP
#define RADHESS_OUTPUT_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

namespace radhess {

// One decimal scientific number with 12 significant digits; byte-stable
// across runs for identical inputs.
std::string format_csv_number(double v);

struct CsvColumn {
  std::string name;
  const Eigen::ArrayXd* values;
};

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns);

struct PlotSeries {
  std::string name;
  const Eigen::ArrayXd* values;
};

// Minimal SVG line plot. The value axis switches to log10 automatically once
// any sample exceeds 1e6 (large solutions dwarf everything otherwise).
void write_svg_plot(const std::string& path, const Eigen::ArrayXd& x,
                    const std::vector<PlotSeries>& series, const std::string& title);

}  // namespace radhess

#endif
