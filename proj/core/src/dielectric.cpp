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

#include "trsim/dielectric.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "trsim/csv.hpp"

namespace trsim::exposure {

namespace {
constexpr double kEps0 = 8.8541878128e-12; // F/m
}

void DielectricParams::validate() const {
    if (eps_inf < 1.0)
        throw std::invalid_argument("dielectric: eps_inf must be >= 1");
    if (delta_eps.size() != tau_s.size())
        throw std::invalid_argument("dielectric: delta_eps and tau_s must pair up");
    for (double d : delta_eps)
        if (d < 0.0)
            throw std::invalid_argument("dielectric: delta_eps must be >= 0");
    for (double t : tau_s)
        if (!(t > 0.0))
            throw std::invalid_argument("dielectric: relaxation times must be > 0");
    if (alpha_broadening < 0.0 || alpha_broadening >= 1.0)
        throw std::invalid_argument("dielectric: alpha_broadening must lie in [0, 1)");
    if (model == DielectricModel::Debye && alpha_broadening != 0.0)
        throw std::invalid_argument("dielectric: Debye model takes no broadening");
    if (static_conductivity_s_m < 0.0)
        throw std::invalid_argument("dielectric: conductivity must be >= 0");
}

std::complex<double> complex_permittivity(const DielectricParams& params, double frequency_hz) {
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("complex_permittivity: frequency must be > 0");
    params.validate();

    const double omega = 2.0 * std::numbers::pi * frequency_hz;
    std::complex<double> eps(params.eps_inf, 0.0);
    for (std::size_t k = 0; k < params.delta_eps.size(); ++k) {
        const double wt = omega * params.tau_s[k];
        std::complex<double> denom;
        if (params.alpha_broadening == 0.0) {
            denom = {1.0, wt}; // shared path keeps the alpha = 0 reduction exact
        } else {
            const double order = 1.0 - params.alpha_broadening;
            denom = 1.0 + std::polar(std::pow(wt, order), std::numbers::pi / 2.0 * order);
        }
        eps += params.delta_eps[k] / denom;
    }
    // sigma / (j omega eps0) = -j sigma / (omega eps0)
    eps += std::complex<double>(0.0, -params.static_conductivity_s_m / (omega * kEps0));
    return eps;
}

double penetration_depth(const DielectricParams& params, double frequency_hz) {
    const std::complex<double> eps = complex_permittivity(params, frequency_hz);
    const std::complex<double> n = std::sqrt(eps); // principal root, Im <= 0 for lossy media
    const double kappa = -n.imag();
    if (!(kappa > 0.0))
        throw std::domain_error("penetration_depth: medium is lossless, depth is unbounded");
    const double omega = 2.0 * std::numbers::pi * frequency_hz;
    constexpr double c0 = 299792458.0;
    return c0 / (omega * kappa);
}

namespace {

std::vector<double> parse_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(csv::to_double(item));
    return out;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

} // namespace

DielectricParams load_dielectric_params(const std::string& path) {
    const std::string text = csv::read_text_file(path);
    DielectricParams params;
    std::stringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("dielectric file '" + path + "': expected key = value, got '" +
                                     line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "model") {
            if (value == "debye")
                params.model = DielectricModel::Debye;
            else if (value == "cole_cole")
                params.model = DielectricModel::ColeCole;
            else
                throw std::runtime_error("dielectric file '" + path + "': unknown model '" + value +
                                         "'");
        } else if (key == "eps_inf") {
            params.eps_inf = csv::to_double(value);
        } else if (key == "delta_eps") {
            params.delta_eps = parse_list(value);
        } else if (key == "tau_s") {
            params.tau_s = parse_list(value);
        } else if (key == "alpha") {
            params.alpha_broadening = csv::to_double(value);
        } else if (key == "sigma_s") {
            params.static_conductivity_s_m = csv::to_double(value);
        } else {
            throw std::runtime_error("dielectric file '" + path + "': unknown key '" + key + "'");
        }
    }
    params.validate();
    return params;
}

DielectricParams skin_params() {
    return {DielectricModel::Debye, 4.0, {32.0}, {6.9e-12}, 0.0, 0.10};
}

DielectricParams fat_params() {
    return {DielectricModel::Debye, 2.5, {2.2}, {8.0e-12}, 0.0, 0.03};
}

DielectricParams muscle_params() {
    return {DielectricModel::Debye, 4.3, {48.0}, {7.2e-12}, 0.0, 0.70};
}

DielectricParams alekseev_params() {
    return {DielectricModel::Debye, 4.1, {34.8}, {6.9e-12}, 0.0, 0.10};
}

DielectricParams chahat_params() {
    return {DielectricModel::ColeCole, 4.0, {33.0}, {6.8e-12}, 0.10, 0.10};
}

} // namespace trsim::exposure
