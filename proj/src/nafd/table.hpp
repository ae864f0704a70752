#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace nafd {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Header plus rows, rendered as CSV or as a JSON array of records.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::string to_csv() const;
  std::string to_json() const;
};

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace nafd
