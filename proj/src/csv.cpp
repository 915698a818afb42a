#include "plexp/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace plexp::csv {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc())
        throw std::runtime_error("csv: double formatting failed");
    return std::string(buf, res.ptr);
}

std::string escape_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

// Reads one record: quoted fields may span physical lines, so lines are
// appended until every quote is closed. Returns false at end of input.
bool read_record(std::istream& in, std::string& record, const std::string& path) {
    if (!std::getline(in, record)) return false;
    auto quotes_balanced = [](const std::string& s) {
        return std::count(s.begin(), s.end(), '"') % 2 == 0;
    };
    while (!quotes_balanced(record)) {
        std::string more;
        if (!std::getline(in, more)) throw std::runtime_error("csv: unterminated quote in " + path);
        record += '\n';
        record += more;
    }
    return true;
}

std::vector<std::string> split_record(const std::string& line, const std::string& path) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF input outside quotes
        } else {
            cur += c;
        }
    }
    if (quoted) throw std::runtime_error("csv: unterminated quote in " + path);
    fields.push_back(cur);
    return fields;
}

double parse_cell(const std::string& s, const std::string& path) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::runtime_error("csv: non-numeric cell '" + s + "' in " + path);
    return v;
}

} // namespace

void write_table(const std::string& path, const Table& table) {
    std::ofstream out(path, std::ios::binary); // binary keeps '\n' endings on every platform
    if (!out) throw std::runtime_error("csv: cannot open " + path + " for writing");
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << escape_field(table.header[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("csv: row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("csv: write failed for " + path);
}

Table read_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    Table table;
    std::string line;
    if (!read_record(in, line, path)) throw std::runtime_error("csv: empty file " + path);
    table.header = split_record(line, path);
    while (read_record(in, line, path)) {
        if (line.empty()) continue;
        const auto cells = split_record(line, path);
        if (cells.size() != table.header.size())
            throw std::runtime_error("csv: ragged row in " + path);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c, path));
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace plexp::csv
