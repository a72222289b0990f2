#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace actionwave::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-named rows rendered as CSV (17 significant digits, comma, LF) or as
/// a JSON array of objects.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

/// %.17g, so binary64 values round-trip exactly.
std::string format_double(double v);

}  // namespace actionwave::cli
