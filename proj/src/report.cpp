#include "fraclap/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fraclap {
namespace {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json to_json_value(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_real(v);
          return v;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

void RunReport::add_row(std::vector<Cell> cells, Cell err_bound) {
  if (cells.size() != columns.size()) {
    throw std::invalid_argument("RunReport::add_row: expected " + std::to_string(columns.size()) + " cells, got " +
                                std::to_string(cells.size()));
  }
  rows.push_back(std::move(cells));
  err_bounds.push_back(std::move(err_bound));
}

std::string RunReport::to_csv() const {
  std::ostringstream os;
  os << "# command: " << command << "\n";
  for (const auto& [k, v] : parameters) os << "# parameter " << k << ": " << v << "\n";
  for (const auto& [k, v] : summary) os << "# summary " << k << ": " << format_cell(v) << "\n";
  os << "# mode: " << mode << "\n";
  os << "# verdict: " << verdict << "\n";
  if (wall_time) os << "# wall_time: " << format_real(*wall_time) << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
  os << (columns.empty() ? "" : ",") << "err_bound\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) os << (i ? "," : "") << csv_escape(format_cell(rows[r][i]));
    os << (rows[r].empty() ? "" : ",") << csv_escape(format_cell(err_bounds[r])) << "\n";
  }
  return os.str();
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["parameters"] = parameters;
  nlohmann::json summary_json = nlohmann::json::object();
  for (const auto& [k, v] : summary) summary_json[k] = to_json_value(v);
  j["summary"] = summary_json;
  j["columns"] = columns;
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(to_json_value(c));
    rows_json.push_back(r);
  }
  j["rows"] = rows_json;
  nlohmann::json errs = nlohmann::json::array();
  for (const auto& e : err_bounds) errs.push_back(to_json_value(e));
  j["err_bounds"] = errs;
  j["verdict"] = verdict;
  j["mode"] = mode;
  if (wall_time) j["wall_time"] = *wall_time;
  return j.dump(2) + "\n";
}

}  // namespace fraclap
