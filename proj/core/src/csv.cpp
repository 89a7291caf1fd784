// trsim - radiated-exposure and power simulator for cellular handsets
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "trsim/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace trsim::csv {

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw std::runtime_error("csv: no column named '" + std::string(name) + "'");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    if (res.ec != std::errc{})
        throw std::runtime_error("csv: failed to format number");
    return std::string(buf, res.ptr);
}

double to_double(const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::runtime_error("csv: malformed number '" + field + "'");
    return value;
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

} // namespace

Table parse(std::string_view text) {
    Table table;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        pos = nl + 1;
        if (line.empty() || line.front() == '#')
            continue;
        if (!have_header) {
            table.header = split_line(line);
            have_header = true;
        } else {
            auto row = split_line(line);
            if (row.size() != table.header.size())
                throw std::runtime_error("csv: row width does not match header");
            table.rows.push_back(std::move(row));
        }
    }
    if (!have_header)
        throw std::runtime_error("csv: empty input");
    return table;
}

Table read_file(const std::string& path) { return parse(read_text_file(path)); }

std::string to_string(const Table& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i > 0)
            out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0)
                out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace trsim::csv
