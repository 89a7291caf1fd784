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
#include <string>
#include <vector>

#include "trsim/dielectric.hpp"

namespace trsim::exposure {

struct TissueLayer {
    std::string name;
    double thickness_mm = 0.0;
    double density_kg_m3 = 0.0;
    DielectricParams dielectric;
};

/// Surface-inward stack: epidermis+dermis, subcutaneous adipose tissue,
/// muscle (modelled as a thick closing layer).
std::vector<TissueLayer> default_skin_layers();

/// Depth profile of power density (mW/cm^2) and, once derived, local SAR
/// (W/kg). The PD column is non-increasing in depth for physical inputs.
struct ExposureProfile {
    std::string label;
    std::vector<double> depth_mm;
    std::vector<double> pd_mw_cm2;
    std::vector<double> sar_w_kg; // empty until derived

    void validate() const;
};

/// power / mass in W/kg. Throws for mass <= 0.
double sar_point(double power_w, double mass_kg);

/// Far-field power density G * P / (4 pi d^2) in W/m^2. Throws for d <= 0.
double power_density_far_field(double antenna_gain, double p_total_w, double distance_m);

/// Exponential attenuation through the layer stack, continuous at the
/// interfaces; each layer attenuates with its own plane-wave penetration
/// depth at the given frequency.
ExposureProfile pd_depth_profile(std::span<const TissueLayer> skin, double incident_pd_mw_cm2,
                                 double frequency_hz, double max_depth_mm = 0.0,
                                 double step_mm = 0.02, std::string label = {});

/// SAR(z) = -(1/rho(z)) dPD/dz via central differences, returned on the same
/// grid. Needs at least two depth points.
ExposureProfile sar_depth_profile(const ExposureProfile& pd_profile,
                                  std::span<const TissueLayer> skin);

struct LayerAbsorption {
    std::string layer;
    double entry_pd_mw_cm2 = 0.0;
    double exit_pd_mw_cm2 = 0.0;
    double absorbed_mw_cm2 = 0.0;
    double absorbed_fraction = 0.0; // of the incident power density
};

/// Closed-form per-layer energy split; entries telescope so that
/// incident == sum(absorbed) + final exit.
std::vector<LayerAbsorption> layer_absorption(std::span<const TissueLayer> skin,
                                              double incident_pd_mw_cm2, double frequency_hz);

struct ReductionRow {
    std::string versus;
    double other_pd_mw_cm2 = 0.0;
    double tr_pd_mw_cm2 = 0.0;
    double percent_reduction = 0.0; // (other - tr) / other * 100
};

struct ComparativeReport {
    double comparison_depth_mm = 0.0;
    std::vector<double> depth_mm;
    std::vector<ExposureProfile> profiles; // shared grid, last may be any order
    std::vector<ReductionRow> reductions;  // tr versus every other column
};

/// Builds the side-by-side PD comparison; all profiles must share one depth
/// grid and exactly one must be labelled "tr". The comparison depth must be
/// a grid point.
ComparativeReport comparative_report(std::span<const ExposureProfile> profiles,
                                     double comparison_depth_mm);

/// Fixed-width text rendering of the comparison for terminal output.
std::string to_text(const ComparativeReport& report);

} // namespace trsim::exposure
