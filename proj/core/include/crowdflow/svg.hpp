#pragma once

#include <array>
#include <string>
#include <vector>

namespace crowdflow::io::svg {

/// One plotted series: a polyline, optionally drawn with point markers
/// instead of a connected line.
struct Series {
  std::string label;
  std::vector<std::array<double, 2>> points;
  std::string color = "#1f477a";
  double width = 1.0;
  bool markers = false;
  bool dashed = false;
};

/// Filled cells for region/scan plots: one color per integer class.
struct CellLayer {
  std::vector<double> x;  // cell centers, ascending
  std::vector<double> y;
  std::vector<int> cls;   // row-major, iy * x.size() + ix; -1 = unfilled
};

struct Axis {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  CellLayer cells;  // empty when unused
};

/// Render one or two stacked axes into a self-contained 800x600 SVG with
/// polyline plots; styling constants are centralized here.
std::string render(const std::vector<Axis>& axes);

/// Fixed palette used for region classes and multi-time overlays.
const std::vector<std::string>& palette();

}  // namespace crowdflow::io::svg
