#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace blindsearch::csv {

/// Shortest decimal text that parses back to the same double ("nan", "inf"
/// and "-inf" for non-finite values).
std::string format(double v);
std::string format(std::uint64_t v);

double parse_double(std::string_view s);
std::uint64_t parse_uint(std::string_view s);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position by name; throws FormatError when absent.
    std::size_t column(std::string_view name) const;
};

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Comma-separated, no quoting (fields are numeric). First line is the header.
/// Throws FormatError on ragged rows.
Table read(std::istream& in);

}  // namespace blindsearch::csv
