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

#include <span>
#include <vector>

#include "trsim/types.hpp"

namespace trsim::power {

/// Slot/frame power budget with per-slot, per-user allocations (row-major
/// slot x user).
struct FramePlan {
    int n_slots = 0;
    int n_users = 0;
    double p_max_w = 0.0; // per-slot cap over all users
    double p_avg_w = 0.0; // per-frame average cap
    std::vector<double> allocations_w;

    double& at(int slot, int user) { return allocations_w[static_cast<std::size_t>(slot) * n_users + user]; }
    double at(int slot, int user) const {
        return allocations_w[static_cast<std::size_t>(slot) * n_users + user];
    }
};

struct FrameReport {
    bool slots_ok = true;
    int first_bad_slot = -1;    // valid when !slots_ok
    double worst_slot_total_w = 0.0;
    bool frame_ok = true;
    double frame_total_w = 0.0;
    double frame_budget_w = 0.0; // n_slots * p_avg
    bool negative_allocation = false;

    bool passed() const { return slots_ok && frame_ok && !negative_allocation; }
};

/// Power-splitter state for one slot: alpha steers the share between the
/// harvesting path and the decode path, gamma the RF-to-DC conversion rate.
struct PowerSplit {
    double alpha = 0.0;   // in [0, 1]
    double gamma = 1.0;   // in (0, 1]
    double p_dl_w = 0.0;  // downlink portion, <= p_total
    double p_total_w = 0.0;
};

struct SplitResult {
    double p_tr_w = 0.0;
    double p_am_w = 0.0;
};

struct ApplicationClass {
    AppId id = AppId::A1Text;
    double target_rate_bps = 0.0;
    double bandwidth_hz = 0.0;
};

/// Text < voice < video target rates; bandwidth shared at 5 MHz.
std::vector<ApplicationClass> default_applications();

enum class ThroughputMode { DownlinkActive, UplinkActive, ThermalRadiation };

/// p_tr = gamma * h * (1 - alpha) * p_dl;  p_am = alpha * h * (p_total - p_dl).
SplitResult split_power(const PowerSplit& split, double h_gain);

/// Checks the per-slot cap and the frame-average cap (both inclusive).
FrameReport check_frame(const FramePlan& plan);

/// Sum over assigned subcarriers of log2(1 + p * g / noise). DownlinkActive
/// and ThermalRadiation spend the downlink portion, UplinkActive the rest.
double throughput(ThroughputMode mode, double p_total_w, double p_dl_w,
                  std::span<const double> subcarrier_gains, double noise_var_w);

/// Shannon rate for a given transmit power, in bits/s.
double achievable_rate(double p_t_w, double h_gain, double noise_var_w, double bandwidth_hz);

/// Inverts the rate formula: smallest power meeting the application's target
/// rate. Throws std::domain_error when h_gain == 0 (no finite power serves a
/// rate through a dead channel).
double optimum_power(const ApplicationClass& app, double h_gain, double noise_var_w);

/// Sum of optimum powers over a served application set.
double total_optimum_power(std::span<const ApplicationClass> served, double h_gain,
                           double noise_var_w);

/// Mode-aware variant: Active serves all three applications, ThermalRadiation
/// drops the video class, Flight serves nothing (returns 0).
double total_optimum_power(UeMode mode, std::span<const ApplicationClass> apps, double h_gain,
                           double noise_var_w);

/// am_cell - mixed_cell; meaningful only over identical channel draws.
double power_saved(double am_cell_w, double mixed_cell_w);

/// rate / (sum of radiated powers + circuit power), bits per joule.
double energy_efficiency(double rate_bps, std::span<const double> radiated_powers_w,
                         double p_ckt_w);
double energy_efficiency(double rate_bps, double radiated_power_w, double p_ckt_w);

} // namespace trsim::power
