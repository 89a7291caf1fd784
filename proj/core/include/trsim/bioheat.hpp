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
#include <vector>

namespace trsim::bioheat {

/// Cartesian material grid for the perfused-tissue heat equation. Every
/// per-cell field is strictly positive except perfusion and sar, which may
/// be zero. Index layout is x + nx * (y + ny * z).
struct TissueGrid {
    int nx = 0, ny = 0, nz = 0;
    double spacing_m = 0.0;
    std::vector<double> density_kg_m3;
    std::vector<double> heat_capacity_j_kg_k;
    std::vector<double> conductivity_w_m_k;
    std::vector<double> perfusion_w_m3_k;
    std::vector<double> sar_w_kg;

    static TissueGrid uniform(int nx, int ny, int nz, double spacing_m, double density,
                              double heat_capacity, double conductivity, double perfusion,
                              double sar = 0.0);

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny * nz; }
    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) + static_cast<std::size_t>(nx) * (y + static_cast<std::size_t>(ny) * z);
    }
    bool is_material_uniform() const;
    void validate() const;
};

/// Temperature elevation over blood temperature, u = T - T_blood, in kelvin.
struct TemperatureField {
    int nx = 0, ny = 0, nz = 0;
    std::vector<double> u;
    std::int64_t iteration = 0;

    static TemperatureField zero(const TissueGrid& grid);

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) + static_cast<std::size_t>(nx) * (y + static_cast<std::size_t>(ny) * z);
    }
};

enum class Boundary { Convective, Periodic };

struct SolverConfig {
    double dt_s = 0.0;
    double total_time_s = 0.0;
    double boundary_h_w_m2_k = 10.0;   // 0 degenerates to an insulated boundary
    double ambient_temp_k = 310.15;
    double blood_temp_k = 310.15;
    Boundary boundary = Boundary::Convective;
    bool allow_unstable = false;       // documented bypass for divergence studies
};

/// Largest stable explicit time step: min over cells of
/// 2 rho C delta^2 / (12 k + b delta^2).
double stability_limit(const TissueGrid& grid);

/// Ghost-padded copy of the field, (nx+2)(ny+2)(nz+2). Convective faces use
/// ghost values eliminating k du/dn = -h (u - u_ambient); periodic faces
/// wrap. Ghost edges and corners are unused by the 6-point stencil.
std::vector<double> apply_boundary(const TemperatureField& field, const TissueGrid& grid,
                                   const SolverConfig& config);

/// One explicit update: six-neighbour Laplacian, perfusion decay, SAR source.
/// Rejects dt above the stability limit unless config.allow_unstable.
TemperatureField step(const TemperatureField& field, const TissueGrid& grid,
                      const SolverConfig& config);

/// Runs total_time / dt steps (must divide to an integer) from the given
/// initial elevation, default all-zero.
TemperatureField solve(const TissueGrid& grid, const SolverConfig& config,
                       const TemperatureField* initial = nullptr);

/// Uniform-exposure convenience: sets sar = incident_power / mass everywhere
/// and solves.
TemperatureField solve_with_power(const TissueGrid& grid, const SolverConfig& config,
                                  double incident_power_w, double mass_kg,
                                  const TemperatureField* initial = nullptr);

/// Per-step growth factor of the (lambda, mu, gamma) Fourier mode on a
/// material-uniform grid; |w| <= 1 for every mode iff the step is stable.
double fourier_amplification(int lambda, int mu, int gamma, const TissueGrid& grid,
                             const SolverConfig& config);

double peak_elevation(const TemperatureField& field);
double max_abs_elevation(const TemperatureField& field);
double mean_elevation(const TemperatureField& field);

/// A sustained elevation around 0.1 K is perceptible as warmth.
bool warm_sensation(const TemperatureField& field, double threshold_k = 0.1);

} // namespace trsim::bioheat
