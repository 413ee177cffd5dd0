#include "chaplygin/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace chaplygin {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

void write_csv_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto field : fields) {
    if (!first) out << ',';
    out << field;
    first = false;
  }
  out << '\n';
}

}  // namespace chaplygin
