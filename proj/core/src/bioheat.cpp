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

#include "trsim/bioheat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trsim::bioheat {

TissueGrid TissueGrid::uniform(int nx, int ny, int nz, double spacing_m, double density,
                               double heat_capacity, double conductivity, double perfusion,
                               double sar) {
    TissueGrid g;
    g.nx = nx;
    g.ny = ny;
    g.nz = nz;
    g.spacing_m = spacing_m;
    const std::size_t n = static_cast<std::size_t>(nx) * ny * nz;
    g.density_kg_m3.assign(n, density);
    g.heat_capacity_j_kg_k.assign(n, heat_capacity);
    g.conductivity_w_m_k.assign(n, conductivity);
    g.perfusion_w_m3_k.assign(n, perfusion);
    g.sar_w_kg.assign(n, sar);
    g.validate();
    return g;
}

void TissueGrid::validate() const {
    if (nx < 2 || ny < 2 || nz < 2)
        throw std::invalid_argument("tissue grid: need at least 2 cells per axis");
    if (!(spacing_m > 0.0))
        throw std::invalid_argument("tissue grid: spacing must be > 0");
    const std::size_t n = size();
    if (density_kg_m3.size() != n || heat_capacity_j_kg_k.size() != n ||
        conductivity_w_m_k.size() != n || perfusion_w_m3_k.size() != n || sar_w_kg.size() != n)
        throw std::invalid_argument("tissue grid: field sizes do not match the dimensions");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(density_kg_m3[i] > 0.0) || !(heat_capacity_j_kg_k[i] > 0.0) ||
            !(conductivity_w_m_k[i] > 0.0))
            throw std::invalid_argument("tissue grid: material fields must be strictly positive");
        if (perfusion_w_m3_k[i] < 0.0 || sar_w_kg[i] < 0.0)
            throw std::invalid_argument("tissue grid: perfusion and sar must be >= 0");
    }
}

bool TissueGrid::is_material_uniform() const {
    auto uniform = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    return uniform(density_kg_m3) && uniform(heat_capacity_j_kg_k) &&
           uniform(conductivity_w_m_k) && uniform(perfusion_w_m3_k);
}

TemperatureField TemperatureField::zero(const TissueGrid& grid) {
    TemperatureField f;
    f.nx = grid.nx;
    f.ny = grid.ny;
    f.nz = grid.nz;
    f.u.assign(grid.size(), 0.0);
    return f;
}

double stability_limit(const TissueGrid& grid) {
    grid.validate();
    const double d2 = grid.spacing_m * grid.spacing_m;
    double limit = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double rc = grid.density_kg_m3[i] * grid.heat_capacity_j_kg_k[i];
        const double denom = 12.0 * grid.conductivity_w_m_k[i] + grid.perfusion_w_m3_k[i] * d2;
        limit = std::min(limit, 2.0 * rc * d2 / denom);
    }
    return limit;
}

namespace {

inline std::size_t pad_index(int x, int y, int z, int nx, int ny) {
    return static_cast<std::size_t>(x + 1) +
           static_cast<std::size_t>(nx + 2) *
               (static_cast<std::size_t>(y + 1) +
                static_cast<std::size_t>(ny + 2) * static_cast<std::size_t>(z + 1));
}

} // namespace

std::vector<double> apply_boundary(const TemperatureField& field, const TissueGrid& grid,
                                   const SolverConfig& config) {
    if (field.nx != grid.nx || field.ny != grid.ny || field.nz != grid.nz)
        throw std::invalid_argument("apply_boundary: field does not match the grid");
    const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
    std::vector<double> padded(static_cast<std::size_t>(nx + 2) * (ny + 2) * (nz + 2), 0.0);

    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x)
                padded[pad_index(x, y, z, nx, ny)] = field.u[field.index(x, y, z)];

    // Elevation the ambient air sits at, relative to blood temperature.
    const double u_ambient = config.ambient_temp_k - config.blood_temp_k;
    const double delta = grid.spacing_m;

    auto ghost = [&](int bx, int by, int bz) {
        const double ub = field.u[field.index(bx, by, bz)];
        const double k = grid.conductivity_w_m_k[grid.index(bx, by, bz)];
        return ub - delta * config.boundary_h_w_m2_k / k * (ub - u_ambient);
    };

    const bool periodic = config.boundary == Boundary::Periodic;
    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y) {
            padded[pad_index(-1, y, z, nx, ny)] =
                periodic ? field.u[field.index(nx - 1, y, z)] : ghost(0, y, z);
            padded[pad_index(nx, y, z, nx, ny)] =
                periodic ? field.u[field.index(0, y, z)] : ghost(nx - 1, y, z);
        }
    for (int z = 0; z < nz; ++z)
        for (int x = 0; x < nx; ++x) {
            padded[pad_index(x, -1, z, nx, ny)] =
                periodic ? field.u[field.index(x, ny - 1, z)] : ghost(x, 0, z);
            padded[pad_index(x, ny, z, nx, ny)] =
                periodic ? field.u[field.index(x, 0, z)] : ghost(x, ny - 1, z);
        }
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            padded[pad_index(x, y, -1, nx, ny)] =
                periodic ? field.u[field.index(x, y, nz - 1)] : ghost(x, y, 0);
            padded[pad_index(x, y, nz, nx, ny)] =
                periodic ? field.u[field.index(x, y, 0)] : ghost(x, y, nz - 1);
        }
    return padded;
}

TemperatureField step(const TemperatureField& field, const TissueGrid& grid,
                      const SolverConfig& config) {
    if (!(config.dt_s > 0.0))
        throw std::invalid_argument("step: dt must be > 0");
    if (!config.allow_unstable && config.dt_s > stability_limit(grid))
        throw std::domain_error(
            "step: dt exceeds the explicit stability limit; rerun with the unstable override "
            "only for divergence studies");

    const std::vector<double> padded = apply_boundary(field, grid, config);
    const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
    const double dt = config.dt_s;
    const double d2 = grid.spacing_m * grid.spacing_m;

    TemperatureField next = field;
    next.iteration = field.iteration + 1;
    const std::size_t sx = 1;
    const std::size_t sy = static_cast<std::size_t>(nx + 2);
    const std::size_t sz = sy * static_cast<std::size_t>(ny + 2);

    for (int z = 0; z < nz; ++z)
        for (int y = 0; y < ny; ++y)
            for (int x = 0; x < nx; ++x) {
                const std::size_t c = grid.index(x, y, z);
                const std::size_t p = pad_index(x, y, z, nx, ny);
                const double u = padded[p];
                // Difference form of (sum of neighbours - 6u): exactly zero
                // on a uniform field.
                const double laplacian = (padded[p - sx] - u) + (padded[p + sx] - u) +
                                         (padded[p - sy] - u) + (padded[p + sy] - u) +
                                         (padded[p - sz] - u) + (padded[p + sz] - u);
                const double rc = grid.density_kg_m3[c] * grid.heat_capacity_j_kg_k[c];
                double du = grid.conductivity_w_m_k[c] / d2 * laplacian;
                du -= grid.perfusion_w_m3_k[c] * u;
                du += grid.density_kg_m3[c] * grid.sar_w_kg[c];
                next.u[c] = u + dt / rc * du;
            }
    return next;
}

TemperatureField solve(const TissueGrid& grid, const SolverConfig& config,
                       const TemperatureField* initial) {
    grid.validate();
    if (!(config.dt_s > 0.0) || !(config.total_time_s > 0.0))
        throw std::invalid_argument("solve: dt and total time must be > 0");
    const double steps_exact = config.total_time_s / config.dt_s;
    const auto n_steps = static_cast<std::int64_t>(std::llround(steps_exact));
    if (n_steps < 1 || std::abs(steps_exact - static_cast<double>(n_steps)) > 1e-9 * steps_exact)
        throw std::invalid_argument("solve: total_time must be a positive integer multiple of dt");

    TemperatureField field = initial ? *initial : TemperatureField::zero(grid);
    if (field.u.size() != grid.size())
        throw std::invalid_argument("solve: initial field does not match the grid");
    for (std::int64_t i = 0; i < n_steps; ++i)
        field = step(field, grid, config);
    return field;
}

TemperatureField solve_with_power(const TissueGrid& grid, const SolverConfig& config,
                                  double incident_power_w, double mass_kg,
                                  const TemperatureField* initial) {
    if (incident_power_w < 0.0)
        throw std::invalid_argument("solve_with_power: power must be >= 0");
    if (!(mass_kg > 0.0))
        throw std::invalid_argument("solve_with_power: mass must be > 0");
    TissueGrid exposed = grid;
    exposed.sar_w_kg.assign(grid.size(), incident_power_w / mass_kg);
    return solve(exposed, config, initial);
}

double fourier_amplification(int lambda, int mu, int gamma, const TissueGrid& grid,
                             const SolverConfig& config) {
    grid.validate();
    if (!grid.is_material_uniform())
        throw std::invalid_argument("fourier_amplification: grid must be material-uniform");
    const double rc = grid.density_kg_m3.front() * grid.heat_capacity_j_kg_k.front();
    const double k = grid.conductivity_w_m_k.front();
    const double b = grid.perfusion_w_m3_k.front();
    const double d2 = grid.spacing_m * grid.spacing_m;

    auto sin2 = [](double a) {
        const double s = std::sin(a);
        return s * s;
    };
    const double modes = sin2(std::numbers::pi * lambda / grid.nx) +
                         sin2(std::numbers::pi * mu / grid.ny) +
                         sin2(std::numbers::pi * gamma / grid.nz);
    return 1.0 - config.dt_s * b / rc - 4.0 * config.dt_s * k / (rc * d2) * modes;
}

double peak_elevation(const TemperatureField& field) {
    return *std::max_element(field.u.begin(), field.u.end());
}

double max_abs_elevation(const TemperatureField& field) {
    double m = 0.0;
    for (double v : field.u)
        m = std::max(m, std::abs(v));
    return m;
}

double mean_elevation(const TemperatureField& field) {
    double sum = 0.0;
    for (double v : field.u)
        sum += v;
    return sum / static_cast<double>(field.u.size());
}

bool warm_sensation(const TemperatureField& field, double threshold_k) {
    return peak_elevation(field) >= threshold_k;
}

} // namespace trsim::bioheat
