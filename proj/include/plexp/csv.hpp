#pragma once

#include <string>
#include <vector>

namespace plexp::csv {

// Shortest decimal string that parses back to exactly the same double.
// Always uses '.' as the decimal separator, independent of locale.
std::string format_double(double v);

// RFC-4180 quoting: a field containing a comma, a quote, or a line break
// is wrapped in quotes with inner quotes doubled; anything else passes
// through unchanged.
std::string escape_field(const std::string& field);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows; // every row matches header size
};

// Writes header + rows with '\n' line endings. The parent directory must
// already exist. Throws std::runtime_error on I/O failure and
// std::invalid_argument on a ragged row.
void write_table(const std::string& path, const Table& table);

// Reads a file produced by write_table: one header line, then numeric
// rows. Quoted fields are unescaped. Throws on missing file, a ragged
// row, or a non-numeric cell.
Table read_table(const std::string& path);

} // namespace plexp::csv
