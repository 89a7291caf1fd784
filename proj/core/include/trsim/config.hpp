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

#include <cstdint>
#include <string>

#include "trsim/mode.hpp"

namespace trsim::cfg {

/// Raised with the offending [section].key name on any malformed or
/// out-of-range entry.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SarAmPower {
    UplinkPortion, // exposure power is p_total - p_dl, the share suspended in TR
    Total,         // exposure power is the full radiated power
};

struct ChannelConfig {
    double frequency_hz = 30e9;
    double bandwidth_hz = 5e6;
    double noise_var_w = 1e-13;
    int n_taps = 8;
    double delay_spread_s = 1e-6;
    double tx_ref_dbm = 30.0;          // maps displayed signal strength to channel gain
    double t_bs_w = 20.0;              // serving-station transmit power
    double p_j_w = 1.0;                // co-channel handset transmit power
    double interference_coupling = 0.01;
};

struct PowerConfig {
    double a1_rate_bps = 10e3;
    double a2_rate_bps = 64e3;
    double a3_rate_bps = 2e6;
    double p_ckt_w = 0.1;
    int n_slots = 10;                  // slots per frame
    double p_max_w = 100.0;
    double p_avg_w = 50.0;
    double alpha = 0.5;
    double gamma = 1.0;
};

struct ZoneConfig {
    // Signal-strength bands the two user populations are drawn from.
    double am_band_low_dbm = -89.0;
    double am_band_high_dbm = -51.0;
    double tr_band_low_dbm = -119.0;
    double tr_band_high_dbm = -100.0;
};

struct ExposureConfig {
    double reference_distance_m = 0.05; // handset-to-head
    double antenna_gain = 1.0;
    double tissue_mass_kg = 0.01;       // averaging mass for SAR accounting
    SarAmPower sar_am_power = SarAmPower::UplinkPortion;
    double incident_pd_am_mw_cm2 = 0.50;
    double incident_pd_tr_mw_cm2 = 0.41;
    double profile_step_mm = 0.02;
    double profile_depth_mm = 0.0;      // 0: the full layer stack
    double epidermis_thickness_mm = 1.5;
    double sat_thickness_mm = 3.0;
    double muscle_thickness_mm = 20.0;
    double epidermis_density_kg_m3 = 1109.0;
    double sat_density_kg_m3 = 911.0;
    double muscle_density_kg_m3 = 1090.0;
    std::string dielectric_dir;         // optional parameter-file overrides
};

struct BioheatConfig {
    int grid_nx = 40, grid_ny = 40, grid_nz = 40;
    double spacing_m = 1e-4;
    double density_kg_m3 = 1109.0;
    double heat_capacity_j_kg_k = 3391.0;
    double conductivity_w_m_k = 0.37;
    double perfusion_w_m3_k = 9100.0;
    double boundary_h_w_m2_k = 10.0;
    double ambient_temp_k = 310.15;
    double blood_temp_k = 310.15;
    double dt_s = 0.0;                  // 0: 0.9 x stability limit
    double total_time_s = 30.0;
    double mass_kg = 1.0;               // exposed mass for the standalone solve
    double power_am_w = 1.0;
    double power_tr_w = 0.82;
};

struct ScenarioConfig {
    int n_users = 50;
    int tr_users = 20;
    int iterations = 100;
    std::uint64_t seed = 1;
    std::string operator_profile = "generic";

    ChannelConfig channel;
    PowerConfig power;
    mode::DecisionConfig decision;
    ZoneConfig zones;
    ExposureConfig exposure;
    BioheatConfig bioheat;

    void validate() const; // throws ConfigError naming the field

    static ScenarioConfig from_text(const std::string& text);
    static ScenarioConfig from_file(const std::string& path);

    /// Full round-trippable key = value rendering, fixed ordering.
    std::string to_text() const;
};

} // namespace trsim::cfg
