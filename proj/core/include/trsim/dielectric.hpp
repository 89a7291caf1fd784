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
#include <string>
#include <vector>

namespace trsim::exposure {

enum class DielectricModel { Debye, ColeCole };

/// Relaxation-model parameters for one tissue. With alpha_broadening == 0
/// the Cole-Cole form evaluates the identical expression as Debye.
struct DielectricParams {
    DielectricModel model = DielectricModel::Debye;
    double eps_inf = 1.0;
    std::vector<double> delta_eps;      // one entry per relaxation pole
    std::vector<double> tau_s;          // matching relaxation times
    double alpha_broadening = 0.0;      // in [0, 1), Cole-Cole only
    double static_conductivity_s_m = 0.0;

    void validate() const;
};

/// Relative complex permittivity under the e^{+j omega t} convention; the
/// imaginary part is <= 0 for physical (lossy) parameters.
std::complex<double> complex_permittivity(const DielectricParams& params, double frequency_hz);

/// Plane-wave field penetration depth in meters; power decays as
/// exp(-2 z / depth).
double penetration_depth(const DielectricParams& params, double frequency_hz);

/// Key-value parameter file: model, eps_inf, delta_eps, tau_s, alpha,
/// sigma_s; lists are comma separated.
DielectricParams load_dielectric_params(const std::string& path);

// Literature-standard single-pole models around 30 GHz.
DielectricParams skin_params();
DielectricParams fat_params();
DielectricParams muscle_params();
DielectricParams alekseev_params();
DielectricParams chahat_params();

} // namespace trsim::exposure
