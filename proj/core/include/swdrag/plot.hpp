#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swdrag {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "t";
  std::string y_label = "E";
  bool log_x = false;
  bool log_y = true;
  int width = 640;
  int height = 420;
};

/// Static SVG line chart. Non-positive values are dropped on log axes.
void write_svg_plot(std::ostream& os, const std::vector<PlotSeries>& series,
                    const PlotOptions& options);

}  // namespace swdrag
