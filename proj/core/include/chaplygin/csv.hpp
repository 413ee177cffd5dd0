#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace chaplygin {

// Shortest representation that round-trips through strtod; "nan", "inf", "-inf" otherwise.
std::string format_double(double value);

// Writes one comma-separated line.
void write_csv_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace chaplygin
