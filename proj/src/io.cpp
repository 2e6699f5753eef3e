#include "qpump/io.hpp"

#include "qpump/common.hpp"

#include "json.hpp"

#include <cstdio>

namespace qpump {

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

void write_csv(std::ostream& os, const Table& table, int precision) {
  for (const auto& [key, value] : table.meta) os << "# " << key << " = " << value << "\n";
  for (size_t c = 0; c < table.columns.size(); ++c)
    os << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw InvariantViolation("table row width does not match the column schema");
    for (size_t c = 0; c < row.size(); ++c)
      os << format_number(row[c], precision) << (c + 1 < row.size() ? "," : "\n");
  }
}

std::string table_to_json(const Table& table, int indent) {
  nlohmann::json j;
  j["meta"] = nlohmann::json::object();
  for (const auto& [key, value] : table.meta) j["meta"][key] = value;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw InvariantViolation("table row width does not match the column schema");
    j["rows"].push_back(row);
  }
  return j.dump(indent);
}

}  // namespace qpump
