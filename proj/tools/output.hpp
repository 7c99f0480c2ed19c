#ifndef PTDARBOUX_TOOLS_OUTPUT_HPP
#define PTDARBOUX_TOOLS_OUTPUT_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptdarboux/jet.hpp"

namespace ptdarboux::cli {

using Json = nlohmann::ordered_json;

inline double unsigned_zero(double v) { return v == 0.0 ? 0.0 : v; }

/// %.17g, so every double round-trips.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", unsigned_zero(v));
  return buf;
}

inline Json complex_json(Complex z) { return Json{{"re", unsigned_zero(z.real())}, {"im", unsigned_zero(z.imag())}}; }

/// Header plus comma-separated rows, LF line ends.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

inline void write_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

}  // namespace ptdarboux::cli

#endif  // PTDARBOUX_TOOLS_OUTPUT_HPP
