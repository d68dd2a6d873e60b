#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "trustgame/errors.hpp"

namespace trustgame {

// A rectangular numeric table with named columns. CSV output uses '.'
// decimal separator, 17 significant digits, and Unix newlines so every
// double round-trips losslessly.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const;
  void add_row(std::vector<double> row);
  void write_csv(std::ostream& out) const;
  std::string to_csv() const;
};

}  // namespace trustgame
