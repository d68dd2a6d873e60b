#include "trustgame/table.hpp"

#include <cstdio>
#include <sstream>

namespace trustgame {

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  std::ostringstream msg;
  msg << "unknown column '" << name << "'; available:";
  for (const auto& c : columns) msg << " " << c;
  throw ConfigError(msg.str());
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw ConfigError("Table::add_row: row width does not match columns");
  }
  rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out << ',';
    out << columns[i];
  }
  out << '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out << buf;
    }
    out << '\n';
  }
}

std::string Table::to_csv() const {
  std::ostringstream out;
  write_csv(out);
  return out.str();
}

}  // namespace trustgame
