#include "trustgame/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace trustgame {

namespace {

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3a9d5d", "#8a4fbf",
                          "#c98a2b", "#4f6670", "#b2506f", "#2b8a8a"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string emit_plot(const Table& table, const PlotSpec& spec) {
  if (spec.series.empty()) {
    throw ConfigError("emit_plot: no series selected");
  }
  if (table.rows.empty()) {
    throw ConfigError("emit_plot: table has no rows");
  }
  const std::size_t xi = table.column_index(spec.x_column);
  std::vector<std::size_t> si;
  si.reserve(spec.series.size());
  for (const auto& name : spec.series) si.push_back(table.column_index(name));

  double xmin = table.rows.front()[xi], xmax = xmin;
  double ymin = table.rows.front()[si[0]], ymax = ymin;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[xi]);
    xmax = std::max(xmax, row[xi]);
    for (std::size_t s : si) {
      ymin = std::min(ymin, row[s]);
      ymax = std::max(ymax, row[s]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const double ml = 60, mr = 20, mt = 36, mb = 44;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  const auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
      << spec.height << "\">\n";
  out << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    out << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << spec.title
        << "</text>\n";
  }

  // Axes and ticks.
  out << "<g stroke=\"#444444\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
      << fmt(ml + pw) << "\" y2=\"" << fmt(mt + ph) << "\"/>\n";
  out << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
      << "\" y2=\"" << fmt(mt + ph) << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    out << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(mt + ph + 16)
        << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    out << "<text x=\"" << fmt(ml - 6) << "\" y=\"" << fmt(py(yv) + 4)
        << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  out << "</g>\n";

  // Series polylines.
  for (std::size_t s = 0; s < si.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : table.rows) {
      out << fmt(px(row[xi])) << "," << fmt(py(row[si[s]])) << " ";
    }
    out << "\"/>\n";
  }

  // Legend, upper right.
  out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const double ly = mt + 14 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << fmt(ml + pw - 110) << "\" y1=\"" << fmt(ly - 4)
        << "\" x2=\"" << fmt(ml + pw - 86) << "\" y2=\"" << fmt(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(ml + pw - 80) << "\" y=\"" << fmt(ly) << "\">"
        << spec.series[s] << "</text>\n";
  }
  out << "</g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace trustgame
