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

#include "trsim/power.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trsim/mode.hpp"

namespace trsim::power {

std::vector<ApplicationClass> default_applications() {
    return {
        {AppId::A1Text, 10e3, 5e6},
        {AppId::A2Voice, 64e3, 5e6},
        {AppId::A3Video, 2e6, 5e6},
    };
}

SplitResult split_power(const PowerSplit& split, double h_gain) {
    if (split.alpha < 0.0 || split.alpha > 1.0)
        throw std::invalid_argument("split_power: alpha must lie in [0, 1]");
    if (!(split.gamma > 0.0) || split.gamma > 1.0)
        throw std::invalid_argument("split_power: gamma must lie in (0, 1]");
    if (split.p_dl_w < 0.0 || split.p_dl_w > split.p_total_w)
        throw std::invalid_argument("split_power: need 0 <= p_dl <= p_total");
    if (h_gain < 0.0)
        throw std::invalid_argument("split_power: h_gain must be >= 0");

    SplitResult r;
    r.p_tr_w = split.gamma * h_gain * (1.0 - split.alpha) * split.p_dl_w;
    r.p_am_w = split.alpha * h_gain * (split.p_total_w - split.p_dl_w);
    return r;
}

FrameReport check_frame(const FramePlan& plan) {
    if (plan.n_slots < 1 || plan.n_users < 1)
        throw std::invalid_argument("check_frame: plan must have slots and users");
    if (plan.allocations_w.size() !=
        static_cast<std::size_t>(plan.n_slots) * static_cast<std::size_t>(plan.n_users))
        throw std::invalid_argument("check_frame: allocation table size mismatch");

    FrameReport report;
    report.frame_budget_w = plan.n_slots * plan.p_avg_w;
    for (int slot = 0; slot < plan.n_slots; ++slot) {
        double slot_total = 0.0;
        for (int user = 0; user < plan.n_users; ++user) {
            const double p = plan.at(slot, user);
            if (p < 0.0)
                report.negative_allocation = true;
            slot_total += p;
        }
        report.worst_slot_total_w = std::max(report.worst_slot_total_w, slot_total);
        if (slot_total > plan.p_max_w && report.slots_ok) {
            report.slots_ok = false;
            report.first_bad_slot = slot;
        }
        report.frame_total_w += slot_total;
    }
    report.frame_ok = report.frame_total_w <= report.frame_budget_w;
    return report;
}

double throughput(ThroughputMode mode, double p_total_w, double p_dl_w,
                  std::span<const double> subcarrier_gains, double noise_var_w) {
    if (!(noise_var_w > 0.0))
        throw std::invalid_argument("throughput: noise variance must be > 0");
    if (p_dl_w < 0.0 || p_dl_w > p_total_w)
        throw std::invalid_argument("throughput: need 0 <= p_dl <= p_total");

    const double signal_w = (mode == ThroughputMode::UplinkActive) ? p_total_w - p_dl_w : p_dl_w;
    double bits_per_s_hz = 0.0;
    for (double g : subcarrier_gains)
        bits_per_s_hz += std::log2(1.0 + signal_w * g / noise_var_w);
    return bits_per_s_hz;
}

double achievable_rate(double p_t_w, double h_gain, double noise_var_w, double bandwidth_hz) {
    if (!(noise_var_w > 0.0))
        throw std::invalid_argument("achievable_rate: noise variance must be > 0");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("achievable_rate: bandwidth must be > 0");
    return bandwidth_hz * std::log2(1.0 + p_t_w * h_gain / noise_var_w);
}

double optimum_power(const ApplicationClass& app, double h_gain, double noise_var_w) {
    if (!(h_gain > 0.0))
        throw std::domain_error("optimum_power: channel gain is zero (deep fade)");
    if (!(noise_var_w > 0.0))
        throw std::invalid_argument("optimum_power: noise variance must be > 0");
    if (!(app.bandwidth_hz > 0.0))
        throw std::invalid_argument("optimum_power: bandwidth must be > 0");
    if (app.target_rate_bps < 0.0)
        throw std::invalid_argument("optimum_power: target rate must be >= 0");
    return noise_var_w / h_gain * std::expm1(app.target_rate_bps / app.bandwidth_hz * std::numbers::ln2);
}

double total_optimum_power(std::span<const ApplicationClass> served, double h_gain,
                           double noise_var_w) {
    if (served.empty())
        throw std::invalid_argument("total_optimum_power: empty application set");
    double total = 0.0;
    for (const ApplicationClass& app : served)
        total += optimum_power(app, h_gain, noise_var_w);
    return total;
}

double total_optimum_power(UeMode mode, std::span<const ApplicationClass> apps, double h_gain,
                           double noise_var_w) {
    if (mode == UeMode::Flight)
        return 0.0;
    std::vector<ApplicationClass> served;
    for (const ApplicationClass& app : apps)
        if (mode::serves(mode, app.id))
            served.push_back(app);
    return total_optimum_power(served, h_gain, noise_var_w);
}

double power_saved(double am_cell_w, double mixed_cell_w) { return am_cell_w - mixed_cell_w; }

double energy_efficiency(double rate_bps, std::span<const double> radiated_powers_w,
                         double p_ckt_w) {
    if (!(p_ckt_w > 0.0))
        throw std::invalid_argument("energy_efficiency: circuit power must be > 0");
    double denom = p_ckt_w;
    for (double p : radiated_powers_w) {
        if (p < 0.0)
            throw std::invalid_argument("energy_efficiency: radiated power must be >= 0");
        denom += p;
    }
    return rate_bps / denom;
}

double energy_efficiency(double rate_bps, double radiated_power_w, double p_ckt_w) {
    return energy_efficiency(rate_bps, std::span<const double>{&radiated_power_w, 1}, p_ckt_w);
}

} // namespace trsim::power
