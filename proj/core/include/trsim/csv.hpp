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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace trsim::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(std::string_view name) const; // throws if absent
};

/// Locale-independent number formatting, 9 significant digits.
std::string format_double(double v);

double to_double(const std::string& field); // throws on malformed input

Table parse(std::string_view text);
Table read_file(const std::string& path);

/// Emits header + rows with '\n' line endings; numeric cells must already be
/// formatted by the caller.
std::string to_string(const Table& table);

void write_file(const std::string& path, std::string_view contents);
std::string read_text_file(const std::string& path);

} // namespace trsim::csv
