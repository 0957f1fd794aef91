#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace bolab {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// Column-named rows, written as RFC-4180 CSV or as JSON objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  bool empty() const { return rows.empty(); }
};

/// Shortest round-trip decimal form; deterministic across runs.
std::string format_double(double v);
std::string format_cell(const Cell& c);

void write_csv(const Table& t, std::ostream& os);
void write_csv(const Table& t, const std::filesystem::path& path);
nlohmann::json to_json(const Table& t);

struct ExperimentReport {
  std::string name;
  nlohmann::json config = nlohmann::json::object();
  Table rows;
  bool passed = false;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

/// Writes <dir>/<name>.csv and <dir>/<name>.json.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace bolab
