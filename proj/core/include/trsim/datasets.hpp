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

#include <array>
#include <string>
#include <vector>

#include "trsim/csv.hpp"
#include "trsim/exposure.hpp"

namespace trsim::datasets {

/// Directory holding the bundled reference csv files; compile-time default,
/// overridable by every loader.
std::string default_data_dir();

/// Published power-density attenuation columns on the shared depth grid.
/// The raw table preserves the original cell spelling so reports can echo
/// it verbatim.
struct PdReference {
    csv::Table raw;
    std::vector<double> depth_mm;
    std::vector<exposure::ExposureProfile> profiles; // alekseev, chahat, am, tr
};

PdReference load_pd_reference(const std::string& path);
PdReference load_pd_reference(); // from default_data_dir()

/// Measured gain/coefficient pairs of the reference non-stationary channel.
struct ChannelReferenceRow {
    double time_instant = 0.0;
    double gain = 0.0;
    double coefficient_magnitude = 0.0;
};

/// The gain column is the authoritative one; the published coefficient
/// magnitudes are rounded and only approximately satisfy gain = |h|^2.
std::vector<ChannelReferenceRow> load_channel_reference(const std::string& path);
std::vector<ChannelReferenceRow> load_channel_reference();

std::string operators_csv_path();
std::string pd_reference_csv_path();
std::string channel_reference_csv_path();

} // namespace trsim::datasets
