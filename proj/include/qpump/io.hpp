#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qpump {

/// Rectangular result table with '#'-prefixed metadata header lines.
/// Bodies (column header + rows) are byte-stable: numbers are formatted with
/// snprintf at a fixed significant-digit count, independent of locale and
/// worker count.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> meta;

  void add_meta(const std::string& key, const std::string& value) {
    meta.emplace_back(key, value);
  }
  std::vector<double>& add_row() {
    rows.emplace_back(columns.size());
    return rows.back();
  }
};

/// %.{precision}g (significant digits).
std::string format_number(double v, int precision = 12);

void write_csv(std::ostream& os, const Table& table, int precision = 12);

/// {"meta": {...}, "columns": [...], "rows": [[...], ...]}
std::string table_to_json(const Table& table, int indent = 2);

}  // namespace qpump
