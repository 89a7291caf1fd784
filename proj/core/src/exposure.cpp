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

#include "trsim/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace trsim::exposure {

std::vector<TissueLayer> default_skin_layers() {
    return {
        {"epidermis_dermis", 1.5, 1109.0, skin_params()},
        {"sat", 3.0, 911.0, fat_params()},
        {"muscle", 20.0, 1090.0, muscle_params()},
    };
}

void ExposureProfile::validate() const {
    if (depth_mm.size() != pd_mw_cm2.size())
        throw std::invalid_argument("exposure profile '" + label + "': pd/depth size mismatch");
    if (!sar_w_kg.empty() && sar_w_kg.size() != depth_mm.size())
        throw std::invalid_argument("exposure profile '" + label + "': sar/depth size mismatch");
    for (std::size_t i = 0; i < depth_mm.size(); ++i) {
        if (i > 0 && depth_mm[i] <= depth_mm[i - 1])
            throw std::invalid_argument("exposure profile '" + label + "': depths must increase");
        if (i > 0 && pd_mw_cm2[i] > pd_mw_cm2[i - 1])
            throw std::invalid_argument("exposure profile '" + label +
                                        "': power density must not increase with depth");
        if (pd_mw_cm2[i] < 0.0)
            throw std::invalid_argument("exposure profile '" + label + "': negative power density");
    }
    for (double s : sar_w_kg)
        if (s < 0.0)
            throw std::invalid_argument("exposure profile '" + label + "': negative sar");
}

double sar_point(double power_w, double mass_kg) {
    if (!(mass_kg > 0.0))
        throw std::invalid_argument("sar_point: mass must be > 0");
    if (power_w < 0.0)
        throw std::invalid_argument("sar_point: power must be >= 0");
    return power_w / mass_kg;
}

double power_density_far_field(double antenna_gain, double p_total_w, double distance_m) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("power_density_far_field: distance must be > 0");
    if (antenna_gain < 0.0 || p_total_w < 0.0)
        throw std::invalid_argument("power_density_far_field: gain and power must be >= 0");
    return antenna_gain * p_total_w / (4.0 * std::numbers::pi * distance_m * distance_m);
}

namespace {

struct LayerSpan {
    double entry_mm;
    double exit_mm;
    double depth_mm_scale; // penetration depth in mm
    const TissueLayer* layer;
};

std::vector<LayerSpan> layout(std::span<const TissueLayer> skin, double frequency_hz) {
    if (skin.empty())
        throw std::invalid_argument("exposure: layer stack is empty");
    std::vector<LayerSpan> spans;
    double z = 0.0;
    for (const TissueLayer& layer : skin) {
        if (!(layer.thickness_mm > 0.0))
            throw std::invalid_argument("exposure: layer '" + layer.name +
                                        "' must have positive thickness");
        if (!(layer.density_kg_m3 > 0.0))
            throw std::invalid_argument("exposure: layer '" + layer.name +
                                        "' must have positive density");
        LayerSpan span;
        span.entry_mm = z;
        z += layer.thickness_mm;
        span.exit_mm = z;
        span.depth_mm_scale = penetration_depth(layer.dielectric, frequency_hz) * 1e3;
        span.layer = &layer;
        spans.push_back(span);
    }
    return spans;
}

// Power density at depth z, continuous across interfaces.
double pd_at(const std::vector<LayerSpan>& spans, double incident, double z_mm) {
    double pd = incident;
    for (const LayerSpan& span : spans) {
        if (z_mm >= span.exit_mm) {
            pd *= std::exp(-2.0 * (span.exit_mm - span.entry_mm) / span.depth_mm_scale);
            continue;
        }
        pd *= std::exp(-2.0 * (z_mm - span.entry_mm) / span.depth_mm_scale);
        return pd;
    }
    return pd; // beyond the stack: everything already attenuated
}

double density_at(std::span<const TissueLayer> skin, double z_mm) {
    double exit = 0.0;
    for (const TissueLayer& layer : skin) {
        exit += layer.thickness_mm;
        if (z_mm < exit)
            return layer.density_kg_m3;
    }
    return skin.back().density_kg_m3;
}

} // namespace

ExposureProfile pd_depth_profile(std::span<const TissueLayer> skin, double incident_pd_mw_cm2,
                                 double frequency_hz, double max_depth_mm, double step_mm,
                                 std::string label) {
    if (incident_pd_mw_cm2 < 0.0)
        throw std::invalid_argument("pd_depth_profile: incident power density must be >= 0");
    if (!(step_mm > 0.0))
        throw std::invalid_argument("pd_depth_profile: step must be > 0");
    const std::vector<LayerSpan> spans = layout(skin, frequency_hz);
    if (max_depth_mm <= 0.0)
        max_depth_mm = spans.back().exit_mm;

    ExposureProfile profile;
    profile.label = std::move(label);
    const auto n_steps = static_cast<std::size_t>(std::llround(max_depth_mm / step_mm));
    profile.depth_mm.reserve(n_steps + 1);
    profile.pd_mw_cm2.reserve(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double z = static_cast<double>(i) * step_mm;
        profile.depth_mm.push_back(z);
        profile.pd_mw_cm2.push_back(pd_at(spans, incident_pd_mw_cm2, z));
    }
    profile.validate();
    return profile;
}

ExposureProfile sar_depth_profile(const ExposureProfile& pd_profile,
                                  std::span<const TissueLayer> skin) {
    pd_profile.validate();
    if (pd_profile.depth_mm.size() < 2)
        throw std::invalid_argument("sar_depth_profile: need at least two depth points");
    if (skin.empty())
        throw std::invalid_argument("sar_depth_profile: layer stack is empty");

    ExposureProfile out = pd_profile;
    out.sar_w_kg.assign(out.depth_mm.size(), 0.0);
    const std::size_t n = out.depth_mm.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i == 0) ? 0 : i - 1;
        const std::size_t hi = (i == n - 1) ? n - 1 : i + 1;
        // mW/cm^2 -> W/m^2 is x10; mm -> m is x1e-3.
        const double dpd_w_m2 = (out.pd_mw_cm2[hi] - out.pd_mw_cm2[lo]) * 10.0;
        const double dz_m = (out.depth_mm[hi] - out.depth_mm[lo]) * 1e-3;
        out.sar_w_kg[i] = -dpd_w_m2 / dz_m / density_at(skin, out.depth_mm[i]);
    }
    out.validate();
    return out;
}

std::vector<LayerAbsorption> layer_absorption(std::span<const TissueLayer> skin,
                                              double incident_pd_mw_cm2, double frequency_hz) {
    const std::vector<LayerSpan> spans = layout(skin, frequency_hz);
    std::vector<LayerAbsorption> result;
    double pd = incident_pd_mw_cm2;
    for (const LayerSpan& span : spans) {
        LayerAbsorption entry;
        entry.layer = span.layer->name;
        entry.entry_pd_mw_cm2 = pd;
        pd *= std::exp(-2.0 * (span.exit_mm - span.entry_mm) / span.depth_mm_scale);
        entry.exit_pd_mw_cm2 = pd;
        entry.absorbed_mw_cm2 = entry.entry_pd_mw_cm2 - pd;
        entry.absorbed_fraction =
            incident_pd_mw_cm2 > 0.0 ? entry.absorbed_mw_cm2 / incident_pd_mw_cm2 : 0.0;
        result.push_back(std::move(entry));
    }
    return result;
}

ComparativeReport comparative_report(std::span<const ExposureProfile> profiles,
                                     double comparison_depth_mm) {
    if (profiles.size() < 2)
        throw std::invalid_argument("comparative_report: need at least two profiles");
    const ExposureProfile* tr = nullptr;
    for (const ExposureProfile& p : profiles) {
        p.validate();
        if (p.depth_mm != profiles.front().depth_mm)
            throw std::invalid_argument("comparative_report: profiles use different depth grids");
        if (p.label == "tr") {
            if (tr)
                throw std::invalid_argument("comparative_report: more than one 'tr' profile");
            tr = &p;
        }
    }
    if (!tr)
        throw std::invalid_argument("comparative_report: no profile labelled 'tr'");

    const auto& grid = profiles.front().depth_mm;
    std::size_t at = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::abs(grid[i] - comparison_depth_mm) < 1e-9)
            at = i;
    if (at == grid.size())
        throw std::invalid_argument("comparative_report: comparison depth is not a grid point");

    ComparativeReport report;
    report.comparison_depth_mm = comparison_depth_mm;
    report.depth_mm = grid;
    report.profiles.assign(profiles.begin(), profiles.end());
    for (const ExposureProfile& p : profiles) {
        if (&p == tr || p.label == "tr")
            continue;
        ReductionRow row;
        row.versus = p.label;
        row.other_pd_mw_cm2 = p.pd_mw_cm2[at];
        row.tr_pd_mw_cm2 = tr->pd_mw_cm2[at];
        if (!(row.other_pd_mw_cm2 > 0.0))
            throw std::domain_error("comparative_report: reference power density is zero at depth");
        row.percent_reduction =
            (row.other_pd_mw_cm2 - row.tr_pd_mw_cm2) / row.other_pd_mw_cm2 * 100.0;
        report.reductions.push_back(std::move(row));
    }
    return report;
}

std::string to_text(const ComparativeReport& report) {
    std::ostringstream out;
    out << "power density (mW/cm^2) by depth\n";
    out << "depth_mm";
    for (const auto& p : report.profiles)
        out << '\t' << p.label;
    out << '\n';
    out.setf(std::ios::fixed);
    out.precision(3);
    for (std::size_t i = 0; i < report.depth_mm.size(); ++i) {
        out << report.depth_mm[i];
        for (const auto& p : report.profiles)
            out << '\t' << p.pd_mw_cm2[i];
        out << '\n';
    }
    out << "\npd reduction of tr at " << report.comparison_depth_mm << " mm\n";
    for (const auto& row : report.reductions)
        out << "  vs " << row.versus << ": " << row.percent_reduction << "%\n";
    return out.str();
}

} // namespace trsim::exposure
