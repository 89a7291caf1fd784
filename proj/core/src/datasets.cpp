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

#include "trsim/datasets.hpp"

#include <stdexcept>

namespace trsim::datasets {

std::string default_data_dir() {
#ifdef TRSIM_DATA_DIR
    return TRSIM_DATA_DIR;
#else
    return "data";
#endif
}

std::string operators_csv_path() { return default_data_dir() + "/table3_operators.csv"; }
std::string pd_reference_csv_path() { return default_data_dir() + "/table4_pd.csv"; }
std::string channel_reference_csv_path() { return default_data_dir() + "/table5_channel.csv"; }

PdReference load_pd_reference(const std::string& path) {
    PdReference ref;
    ref.raw = csv::read_file(path);
    const std::vector<std::string> expected = {"depth_mm", "alekseev", "chahat", "am", "tr"};
    if (ref.raw.header != expected)
        throw std::runtime_error("pd reference '" + path + "': unexpected header");

    ref.profiles.resize(4);
    for (std::size_t c = 0; c < 4; ++c)
        ref.profiles[c].label = expected[c + 1];
    for (const auto& row : ref.raw.rows) {
        ref.depth_mm.push_back(csv::to_double(row.at(0)));
        for (std::size_t c = 0; c < 4; ++c) {
            ref.profiles[c].depth_mm.push_back(ref.depth_mm.back());
            ref.profiles[c].pd_mw_cm2.push_back(csv::to_double(row.at(c + 1)));
        }
    }
    for (const auto& p : ref.profiles)
        p.validate();
    return ref;
}

PdReference load_pd_reference() { return load_pd_reference(pd_reference_csv_path()); }

std::vector<ChannelReferenceRow> load_channel_reference(const std::string& path) {
    const csv::Table table = csv::read_file(path);
    const std::vector<std::string> expected = {"time_instant", "gain", "coefficient_magnitude"};
    if (table.header != expected)
        throw std::runtime_error("channel reference '" + path + "': unexpected header");
    std::vector<ChannelReferenceRow> rows;
    for (const auto& row : table.rows) {
        ChannelReferenceRow r;
        r.time_instant = csv::to_double(row.at(0));
        r.gain = csv::to_double(row.at(1));
        r.coefficient_magnitude = csv::to_double(row.at(2));
        if (r.gain < 0.0 || r.coefficient_magnitude < 0.0)
            throw std::runtime_error("channel reference '" + path + "': negative entry");
        rows.push_back(r);
    }
    if (rows.empty())
        throw std::runtime_error("channel reference '" + path + "': no rows");
    return rows;
}

std::vector<ChannelReferenceRow> load_channel_reference() {
    return load_channel_reference(channel_reference_csv_path());
}

} // namespace trsim::datasets
