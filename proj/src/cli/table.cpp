#include "actionwave/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace actionwave::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << header[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              os << format_double(v);
            } else {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }
}

void Table::write_json(std::ostream& os) const {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              // JSON has no infinity literal.
              if (std::isfinite(v)) {
                obj[header[i]] = v;
              } else {
                obj[header[i]] = format_double(v);
              }
            } else {
              obj[header[i]] = v;
            }
          },
          row[i]);
    }
    array.push_back(std::move(obj));
  }
  os << array.dump(2) << '\n';
}

}  // namespace actionwave::cli
