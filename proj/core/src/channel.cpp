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

#include "trsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trsim/rng.hpp"

namespace trsim::channel {

MultipathChannel sample_channel(std::uint64_t seed, int n_taps, double mean_gain,
                                double delay_spread_s) {
    if (n_taps < 1)
        throw std::invalid_argument("sample_channel: n_taps must be >= 1");
    if (!(mean_gain > 0.0))
        throw std::invalid_argument("sample_channel: mean_gain must be > 0");
    if (delay_spread_s < 0.0)
        throw std::invalid_argument("sample_channel: delay_spread_s must be >= 0");

    Rng rng(seed);
    MultipathChannel ch;
    ch.taps.reserve(static_cast<std::size_t>(n_taps));

    // Per-tap variance so the coherent sum carries mean_gain mean power.
    const double component_sigma = std::sqrt(mean_gain / (2.0 * n_taps));
    for (int n = 0; n < n_taps; ++n) {
        const double re = rng.normal(0.0, component_sigma);
        const double im = rng.normal(0.0, component_sigma);
        ChannelTap tap;
        tap.delay_s = (n_taps == 1) ? 0.0 : rng.uniform(0.0, delay_spread_s);
        tap.amplitude = std::hypot(re, im);
        tap.phase_rad = -std::atan2(im, re); // amplitude * e^{-j phase} == re + j im
        ch.taps.push_back(tap);
    }
    std::sort(ch.taps.begin(), ch.taps.end(),
              [](const ChannelTap& a, const ChannelTap& b) { return a.delay_s < b.delay_s; });
    return ch;
}

ChannelSnapshot snapshot(const MultipathChannel& ch, LinkDirection direction) {
    if (ch.taps.empty())
        throw std::invalid_argument("snapshot: channel has no taps");
    std::complex<double> sum{0.0, 0.0};
    for (const ChannelTap& tap : ch.taps)
        sum += std::polar(tap.amplitude, -tap.phase_rad);
    ChannelSnapshot snap;
    snap.coefficient = sum;
    snap.gain = std::norm(sum);
    snap.direction = direction;
    return snap;
}

std::vector<DelayPower> power_delay_profile(const MultipathChannel& ch) {
    if (ch.taps.empty())
        throw std::invalid_argument("power_delay_profile: channel has no taps");
    std::vector<DelayPower> profile;
    profile.reserve(ch.taps.size());
    for (const ChannelTap& tap : ch.taps)
        profile.push_back({tap.delay_s, tap.amplitude * tap.amplitude});
    return profile;
}

double profile_power(const MultipathChannel& ch) {
    double total = 0.0;
    for (const ChannelTap& tap : ch.taps)
        total += tap.amplitude * tap.amplitude;
    return total;
}

double snr(double p_t_w, const ChannelSnapshot& snap, double noise_var_w) {
    if (!(noise_var_w > 0.0))
        throw std::invalid_argument("snr: noise variance must be > 0");
    if (p_t_w < 0.0)
        throw std::invalid_argument("snr: transmit power must be >= 0");
    return p_t_w * snap.gain / noise_var_w;
}

double sinr(double p_t_w, const ChannelSnapshot& snap, double noise_var_w,
            const InterferenceBudget& budget) {
    if (!(noise_var_w > 0.0))
        throw std::invalid_argument("sinr: noise variance must be > 0");
    if (p_t_w < 0.0)
        throw std::invalid_argument("sinr: transmit power must be >= 0");
    return p_t_w * snap.gain / (noise_var_w + budget.total_w());
}

InterferenceBudget interference(double t_bs_w, double p_j_w, double bs_gain, double ue_gain,
                                std::span<const AppLink> active_links) {
    if (t_bs_w < 0.0 || p_j_w < 0.0 || bs_gain < 0.0 || ue_gain < 0.0)
        throw std::invalid_argument("interference: powers and gains must be >= 0");
    std::size_t downlinks = 0;
    std::size_t uplinks = 0;
    for (const AppLink& link : active_links) {
        if (link.direction == LinkDirection::Downlink)
            ++downlinks;
        else
            ++uplinks;
    }
    InterferenceBudget budget;
    budget.from_bs_w = t_bs_w * bs_gain * static_cast<double>(downlinks);
    budget.from_ues_w = p_j_w * ue_gain * static_cast<double>(uplinks);
    return budget;
}

double rayleigh_envelope_cdf(double r, double mean_gain) {
    if (r <= 0.0)
        return 0.0;
    return 1.0 - std::exp(-r * r / mean_gain);
}

double envelope_ks_statistic(std::span<const double> envelopes, double mean_gain) {
    if (envelopes.empty())
        throw std::invalid_argument("envelope_ks_statistic: no samples");
    std::vector<double> sorted(envelopes.begin(), envelopes.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double cdf = rayleigh_envelope_cdf(sorted[i], mean_gain);
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    return d;
}

double ks_critical_value_1pct(std::size_t n) {
    return 1.62762 / std::sqrt(static_cast<double>(n));
}

} // namespace trsim::channel
