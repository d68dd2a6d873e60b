#pragma once

#include <string>
#include <vector>

#include "trustgame/table.hpp"

namespace trustgame {

// Series/axis selection for emit_plot. The x column and at least one
// series must exist in the table.
struct PlotSpec {
  std::string x_column = "t";
  std::vector<std::string> series;
  std::string title;
  int width = 800;
  int height = 500;
};

// Render a self-contained deterministic SVG line chart: no external
// assets, fixed palette, byte-identical output for identical input.
std::string emit_plot(const Table& table, const PlotSpec& spec);

}  // namespace trustgame
