#include "radhess/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace radhess {

std::string format_csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns) {
  if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "," : "") << columns[c].name;
  out << "\n";
  Eigen::Index rows = columns[0].values->size();
  for (const CsvColumn& col : columns)
    if (col.values->size() != rows) throw std::invalid_argument("write_csv: ragged columns");
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format_csv_number((*columns[c].values)[i]);
    out << "\n";
  }
}

void write_svg_plot(const std::string& path, const Eigen::ArrayXd& x,
                    const std::vector<PlotSeries>& series, const std::string& title) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  const double W = 800, H = 500, ML = 70, MR = 20, MT = 40, MB = 50;
  double ymax = 0.0, ymin = 0.0;
  bool first = true;
  for (const PlotSeries& s : series)
    for (Eigen::Index i = 0; i < s.values->size(); ++i) {
      double v = (*s.values)[i];
      if (!std::isfinite(v)) continue;
      if (first) {
        ymin = ymax = v;
        first = false;
      }
      ymax = std::max(ymax, v);
      ymin = std::min(ymin, v);
    }
  bool log_scale = ymax > 1e6 && ymin > 0.0;
  auto yval = [&](double v) { return log_scale ? std::log10(v) : v; };
  double lo = yval(ymin), hi = yval(ymax);
  if (hi - lo < 1e-12) hi = lo + 1.0;
  double xmin = x[0], xmax = x[x.size() - 1];
  if (xmax - xmin < 1e-12) xmax = xmin + 1.0;

  auto px = [&](double v) { return ML + (v - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto py = [&](double v) { return H - MB - (yval(v) - lo) / (hi - lo) * (H - MT - MB); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << (log_scale ? " (log10 scale)" : "") << "</text>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  int ci = 0;
  double legend_y = MT + 10;
  for (const PlotSeries& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << colors[ci % 4] << "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      double v = (*s.values)[i];
      if (!std::isfinite(v) || (log_scale && v <= 0.0)) continue;
      out << px(x[i]) << "," << py(v) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << W - MR - 110 << "\" y=\"" << legend_y << "\" font-size=\"12\" fill=\""
        << colors[ci % 4] << "\">" << s.name << "</text>\n";
    legend_y += 16;
    ++ci;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", xmax);
  out << "<text x=\"" << W - MR << "\" y=\"" << H - MB + 20
      << "\" text-anchor=\"end\" font-size=\"12\">" << buf << "</text>\n";
  std::snprintf(buf, sizeof buf, "%.6g", log_scale ? hi : ymax);
  out << "<text x=\"" << ML - 6 << "\" y=\"" << MT + 4
      << "\" text-anchor=\"end\" font-size=\"12\">" << buf << "</text>\n";
  out << "</svg>\n";
}

}  // namespace radhess
