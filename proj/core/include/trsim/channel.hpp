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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "trsim/types.hpp"

namespace trsim::channel {

/// One multipath component. The phase folds the Doppler shift and the
/// oscillator offset into a single per-tap angle.
struct ChannelTap {
    double delay_s = 0.0;
    double amplitude = 0.0; // >= 0
    double phase_rad = 0.0;
};

/// Wideband multipath snapshot at one slot. Taps are sorted by delay and the
/// tap count may change between slots; per-slot resampling is what makes the
/// channel non-stationary.
struct MultipathChannel {
    std::vector<ChannelTap> taps;
    std::int64_t slot = 0;
};

/// Narrowband collapse of a multipath channel.
struct ChannelSnapshot {
    std::complex<double> coefficient{0.0, 0.0};
    double gain = 0.0; // |coefficient|^2
    LinkDirection direction = LinkDirection::Downlink;
};

struct InterferenceBudget {
    double from_bs_w = 0.0;
    double from_ues_w = 0.0;

    double total_w() const { return from_bs_w + from_ues_w; }
};

struct DelayPower {
    double delay_s = 0.0;
    double power = 0.0;
};

/// Draws a Rayleigh multipath channel: per-tap coefficients are i.i.d.
/// circular complex Gaussians carrying mean_gain total mean power, delays
/// uniform on [0, delay_spread_s) sorted ascending. Identical arguments give
/// bit-identical channels. Throws std::invalid_argument for n_taps == 0 or
/// mean_gain <= 0.
MultipathChannel sample_channel(std::uint64_t seed, int n_taps, double mean_gain,
                                double delay_spread_s = 1e-6);

/// Coherent sum of all taps: coefficient = sum of amplitude * e^{-j phase}.
ChannelSnapshot snapshot(const MultipathChannel& ch,
                         LinkDirection direction = LinkDirection::Downlink);

/// Per-tap received power versus excess delay (power = amplitude^2).
std::vector<DelayPower> power_delay_profile(const MultipathChannel& ch);

/// Sum of per-tap powers; invariant under any phase rotation.
double profile_power(const MultipathChannel& ch);

/// p_t * gain / noise_var. Throws for noise_var <= 0.
double snr(double p_t_w, const ChannelSnapshot& snap, double noise_var_w);

/// p_t * gain / (noise_var + interference). Equals snr() for an empty budget.
double sinr(double p_t_w, const ChannelSnapshot& snap, double noise_var_w,
            const InterferenceBudget& budget);

/// Aggregates interference: the serving station contributes once per active
/// downlink link, co-channel handsets once per active uplink link. A reduced
/// link set can therefore only lower the total.
InterferenceBudget interference(double t_bs_w, double p_j_w, double bs_gain, double ue_gain,
                                std::span<const AppLink> active_links);

/// CDF of the Rayleigh envelope with mean square mean_gain.
double rayleigh_envelope_cdf(double r, double mean_gain);

/// Kolmogorov-Smirnov distance between sampled envelopes and the Rayleigh
/// CDF; diagnostic surface for the channel generator.
double envelope_ks_statistic(std::span<const double> envelopes, double mean_gain);

/// Critical KS value c(alpha)/sqrt(n) for alpha = 0.01.
double ks_critical_value_1pct(std::size_t n);

} // namespace trsim::channel
