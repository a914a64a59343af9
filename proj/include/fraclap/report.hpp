#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fraclap {

/// A report cell: empty, integer, real, text or flag.
using Cell = std::variant<std::monostate, long, double, std::string, bool>;

/// Marker stored in the err_bound column for values without rounding error.
inline const std::string kExact = "exact";

/// Tabular result of one CLI run. Serialization is deterministic: keys are
/// sorted and reals are printed with 17 significant digits.
struct RunReport {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::map<std::string, Cell> summary;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// One entry per row: a real bound or kExact.
  std::vector<Cell> err_bounds;
  /// "pass", "fail" or "info".
  std::string verdict = "info";
  /// "serial" or "parallel".
  std::string mode = "serial";
  std::optional<double> wall_time;

  void add_row(std::vector<Cell> cells, Cell err_bound);
  std::string to_csv() const;
  std::string to_json() const;
};

std::string format_cell(const Cell& c);

}  // namespace fraclap
