#pragma once

#include <string>
#include <vector>

#include "vortibc/error.hpp"

namespace vortibc {

// Named columns of per-step numbers, exported as CSV.
struct DiagnosticsRecord {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  DiagnosticsRecord() = default;
  explicit DiagnosticsRecord(std::vector<std::string> cols) : columns(std::move(cols)) {}

  void add(std::vector<double> row) {
    if (row.size() != columns.size()) throw Error(ErrorCode::InvalidSpec, "diagnostics row width mismatch");
    rows.push_back(std::move(row));
  }
  int index(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == name) return static_cast<int>(c);
    throw Error(ErrorCode::InvalidSpec, "no diagnostics column '" + name + "'");
  }
  std::vector<double> column(const std::string& name) const {
    const int c = index(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
};

}  // namespace vortibc
