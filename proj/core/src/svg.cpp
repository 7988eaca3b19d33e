#include "crowdflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace crowdflow::io::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginLeft = 62.0;
constexpr double kMarginRight = 18.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 44.0;
constexpr double kAxisGap = 26.0;

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo < hi)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

}  // namespace

const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors = {
      "#4878cf", "#d65f5f", "#6acc65", "#b47cc7", "#c4ad66", "#77bedb",
      "#8c613c", "#e28743", "#474747", "#9ccee5", "#c9a0dc", "#7f9f6b"};
  return colors;
}

std::string render(const std::vector<Axis>& axes) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
         "font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";

  const std::size_t n_axes = std::max<std::size_t>(axes.size(), 1);
  const double panel_h = (kHeight - kMarginTop - kMarginBottom - kAxisGap * (n_axes - 1)) / n_axes;

  for (std::size_t a = 0; a < axes.size(); ++a) {
    const Axis& axis = axes[a];
    const double top = kMarginTop + a * (panel_h + kAxisGap);
    const double bottom = top + panel_h;
    const double left = kMarginLeft;
    const double right = kWidth - kMarginRight;

    Range rx, ry;
    for (const Series& s : axis.series) {
      for (const auto& p : s.points) {
        rx.add(p[0]);
        ry.add(p[1]);
      }
    }
    if (!axis.cells.x.empty()) {
      rx.add(axis.cells.x.front());
      rx.add(axis.cells.x.back());
      ry.add(axis.cells.y.front());
      ry.add(axis.cells.y.back());
    }
    rx.pad();
    ry.pad();

    const auto px = [&](double v) { return left + (v - rx.lo) / (rx.hi - rx.lo) * (right - left); };
    const auto py = [&](double v) { return bottom - (v - ry.lo) / (ry.hi - ry.lo) * (bottom - top); };

    // Cell layer first so curves draw on top.
    if (!axis.cells.x.empty()) {
      const std::size_t nx = axis.cells.x.size();
      const std::size_t ny = axis.cells.y.size();
      const double cw = nx > 1 ? px(axis.cells.x[1]) - px(axis.cells.x[0]) : 8.0;
      const double ch = ny > 1 ? py(axis.cells.y[0]) - py(axis.cells.y[1]) : 8.0;
      for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
          const int cls = axis.cells.cls[j * nx + i];
          if (cls < 0) continue;
          const std::string& color = palette()[cls % palette().size()];
          out << "<rect x=\"" << num(px(axis.cells.x[i]) - 0.5 * cw) << "\" y=\""
              << num(py(axis.cells.y[j]) - 0.5 * ch) << "\" width=\"" << num(cw) << "\" height=\""
              << num(ch) << "\" fill=\"" << color << "\" fill-opacity=\"0.55\"/>\n";
        }
      }
    }

    // Frame.
    out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(right - left)
        << "\" height=\"" << num(bottom - top) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    if (!axis.title.empty())
      out << "<text x=\"" << num(left) << "\" y=\"" << num(top - 8) << "\">" << axis.title
          << "</text>\n";
    out << "<text x=\"" << num(0.5 * (left + right)) << "\" y=\"" << num(bottom + 30)
        << "\" text-anchor=\"middle\">" << axis.x_label << "</text>\n";
    out << "<text x=\"" << num(left - 46) << "\" y=\"" << num(0.5 * (top + bottom))
        << "\" transform=\"rotate(-90 " << num(left - 46) << " " << num(0.5 * (top + bottom))
        << ")\" text-anchor=\"middle\">" << axis.y_label << "</text>\n";

    // Tick labels at the corners of the data range.
    out << "<text x=\"" << num(left) << "\" y=\"" << num(bottom + 14) << "\">" << num(rx.lo)
        << "</text>\n";
    out << "<text x=\"" << num(right) << "\" y=\"" << num(bottom + 14)
        << "\" text-anchor=\"end\">" << num(rx.hi) << "</text>\n";
    out << "<text x=\"" << num(left - 4) << "\" y=\"" << num(bottom) << "\" text-anchor=\"end\">"
        << num(ry.lo) << "</text>\n";
    out << "<text x=\"" << num(left - 4) << "\" y=\"" << num(top + 10) << "\" text-anchor=\"end\">"
        << num(ry.hi) << "</text>\n";

    for (const Series& s : axis.series) {
      if (s.points.empty()) continue;
      if (s.markers) {
        for (const auto& p : s.points) {
          if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
          out << "<circle cx=\"" << num(px(p[0])) << "\" cy=\"" << num(py(p[1]))
              << "\" r=\"1.6\" fill=\"" << s.color << "\"/>\n";
        }
        continue;
      }
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
          << num(s.width) << "\"";
      if (s.dashed) out << " stroke-dasharray=\"5 4\"";
      out << " points=\"";
      for (const auto& p : s.points) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) continue;
        const double cy = std::clamp(py(p[1]), top - 200.0, bottom + 200.0);
        out << num(px(p[0])) << ',' << num(cy) << ' ';
      }
      out << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace crowdflow::io::svg
