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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trsim/bioheat.hpp"
#include "trsim/rng.hpp"

using namespace trsim;
using namespace trsim::bioheat;

namespace {

double total_heat(const TemperatureField& f, const TissueGrid& g) {
    double sum = 0.0;
    const double cell_volume = g.spacing_m * g.spacing_m * g.spacing_m;
    for (std::size_t i = 0; i < f.u.size(); ++i)
        sum += g.density_kg_m3[i] * g.heat_capacity_j_kg_k[i] * f.u[i] * cell_volume;
    return sum;
}

SolverConfig insulated(double dt) {
    SolverConfig c;
    c.dt_s = dt;
    c.boundary_h_w_m2_k = 0.0;
    return c;
}

} // namespace

TEST_CASE("stability limit closed form on a uniform grid") {
    // rho C = 2, k = 1, b = 0, delta = 1 -> 2 * 2 / 12 = 1/3.
    const auto grid = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, 2.0, 1.0, 0.0);
    CHECK(stability_limit(grid) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("perfusion tightens the stability limit") {
    const auto no_perfusion = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, 2.0, 1.0, 0.0);
    const auto strong = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, 2.0, 1.0, 1e9);
    CHECK(stability_limit(strong) < stability_limit(no_perfusion));
    CHECK(stability_limit(strong) == doctest::Approx(2.0 * 2.0 / (12.0 + 1e9)));
}

TEST_CASE("heterogeneous limit equals the per-cell minimum") {
    auto grid = TissueGrid::uniform(3, 3, 3, 1e-3, 1000.0, 3500.0, 0.5, 5000.0);
    Rng rng(9);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.density_kg_m3[i] = rng.uniform(900.0, 1200.0);
        grid.heat_capacity_j_kg_k[i] = rng.uniform(2500.0, 4000.0);
        grid.conductivity_w_m_k[i] = rng.uniform(0.2, 0.6);
        grid.perfusion_w_m3_k[i] = rng.uniform(0.0, 2e4);
    }
    double expected = 1e300;
    const double d2 = grid.spacing_m * grid.spacing_m;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double rc = grid.density_kg_m3[i] * grid.heat_capacity_j_kg_k[i];
        expected = std::min(expected,
                            2.0 * rc * d2 / (12.0 * grid.conductivity_w_m_k[i] +
                                             grid.perfusion_w_m3_k[i] * d2));
    }
    CHECK(stability_limit(grid) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("a uniform field without sources does not move") {
    const auto grid = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, 2.0, 1.0, 0.0);
    auto field = TemperatureField::zero(grid);
    for (auto& u : field.u)
        u = 0.7;
    const auto next = step(field, grid, insulated(0.25));
    for (double u : next.u)
        CHECK(u == 0.7);
    CHECK(next.iteration == 1);
}

TEST_CASE("a uniform source raises the field by dt * s / C") {
    const double s = 3.0;
    const double heat_capacity = 2.0;
    const auto grid = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, heat_capacity, 1.0, 0.0, s);
    const auto field = TemperatureField::zero(grid);
    const double dt = 0.25;
    const auto next = step(field, grid, insulated(dt));
    for (double u : next.u)
        CHECK(u == doctest::Approx(dt * s / heat_capacity).epsilon(1e-14));
}

TEST_CASE("insulated source-free stepping conserves total heat") {
    const auto grid = TissueGrid::uniform(6, 6, 6, 1e-3, 1050.0, 3600.0, 0.5, 0.0);
    auto field = TemperatureField::zero(grid);
    field.u[field.index(3, 3, 3)] = 1.0;
    const double dt = stability_limit(grid);
    const double initial = total_heat(field, grid);
    for (int i = 0; i < 1000; ++i) {
        field = step(field, grid, insulated(dt));
        CHECK(std::abs(total_heat(field, grid) - initial) <= 1e-10 * std::abs(initial));
    }
}

TEST_CASE("ghost layer mirrors the boundary when the surface is insulated") {
    const auto grid = TissueGrid::uniform(3, 3, 3, 1.0, 1.0, 1.0, 1.0, 0.0);
    auto field = TemperatureField::zero(grid);
    Rng rng(4);
    for (auto& u : field.u)
        u = rng.uniform(-1.0, 1.0);
    SolverConfig config = insulated(0.01);
    const auto padded = apply_boundary(field, grid, config);
    const auto pad_at = [&](int x, int y, int z) {
        return padded[static_cast<std::size_t>(x + 1) +
                      5u * (static_cast<std::size_t>(y + 1) + 5u * static_cast<std::size_t>(z + 1))];
    };
    for (int z = 0; z < 3; ++z)
        for (int y = 0; y < 3; ++y) {
            CHECK(pad_at(-1, y, z) == field.u[field.index(0, y, z)]);
            CHECK(pad_at(3, y, z) == field.u[field.index(2, y, z)]);
        }
}

TEST_CASE("a field at ambient temperature is a boundary equilibrium") {
    const auto grid = TissueGrid::uniform(3, 3, 3, 1.0, 1.0, 1.0, 1.0, 0.0);
    SolverConfig config;
    config.dt_s = 0.01;
    config.boundary_h_w_m2_k = 25.0;
    config.blood_temp_k = 310.15;
    config.ambient_temp_k = 311.15; // ambient sits 1 K over blood
    auto field = TemperatureField::zero(grid);
    for (auto& u : field.u)
        u = 1.0;
    const auto padded = apply_boundary(field, grid, config);
    for (double v : padded)
        if (v != 0.0) // corner/edge ghosts stay zero and are never read
            CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("a cold ambient cools the boundary monotonically") {
    const auto grid = TissueGrid::uniform(4, 4, 4, 1e-3, 1000.0, 3500.0, 0.5, 0.0);
    SolverConfig config;
    config.dt_s = 0.9 * stability_limit(grid);
    config.boundary_h_w_m2_k = 500.0;
    config.ambient_temp_k = 300.15; // 10 K below blood
    auto field = TemperatureField::zero(grid);
    for (auto& u : field.u)
        u = 0.0; // start at blood temperature, warmer than ambient
    double last = field.u[field.index(0, 2, 2)];
    for (int i = 0; i < 50; ++i) {
        field = step(field, grid, config);
        const double now = field.u[field.index(0, 2, 2)];
        CHECK(now <= last + 1e-15);
        last = now;
    }
    CHECK(last < 0.0);
}

TEST_CASE("zero-source solve relaxes to the blood temperature") {
    const auto grid = TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 1.0, 0.2, 1.0);
    SolverConfig config = insulated(0.5); // limit = 2/(2.4+0.5) ~ 0.69
    config.total_time_s = 25.0;           // 50 steps, decay (1 - 0.5)^50
    auto initial = TemperatureField::zero(grid);
    for (auto& u : initial.u)
        u = 0.5;
    const auto field = solve(grid, config, &initial);
    CHECK(max_abs_elevation(field) <= 1e-6);
}

TEST_CASE("halving the source halves the steady elevation") {
    auto grid = TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 1.0, 0.2, 1.0);
    SolverConfig config = insulated(0.5);
    config.total_time_s = 40.0;

    const auto full = solve_with_power(grid, config, 1.0, 1.0);
    const auto half = solve_with_power(grid, config, 0.5, 1.0);
    CHECK(peak_elevation(full) > 0.0);
    CHECK(peak_elevation(half) / peak_elevation(full) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(peak_elevation(half) < peak_elevation(full));
}

TEST_CASE("warm sensation flag reflects the configured threshold") {
    const auto grid = TissueGrid::uniform(2, 2, 2, 1.0, 1.0, 1.0, 1.0, 0.0);
    auto field = TemperatureField::zero(grid);
    field.u[0] = 0.12;
    CHECK(warm_sensation(field));
    field.u[0] = 0.09;
    CHECK_FALSE(warm_sensation(field));
}

TEST_CASE("a solve that settles near 0.1 K raises the warm flag") {
    // Steady elevation rho * sar / b = 0.15 K.
    const auto grid = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, 1.0, 0.2, 1.0);
    SolverConfig config = insulated(0.5);
    config.total_time_s = 40.0;
    const auto warm = solve_with_power(grid, config, 0.15, 1.0);
    CHECK(peak_elevation(warm) == doctest::Approx(0.15).epsilon(1e-6));
    CHECK(warm_sensation(warm));
    const auto cool = solve_with_power(grid, config, 0.05, 1.0);
    CHECK_FALSE(warm_sensation(cool));
}

TEST_CASE("fourier amplification closed form") {
    const auto grid = TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 2.0, 1.0, 0.0);
    SolverConfig config = insulated(stability_limit(grid));
    CHECK(fourier_amplification(0, 0, 0, grid, config) == doctest::Approx(1.0));

    // At the limit every mode stays within [-1, 1].
    double w_min = 1.0;
    for (int l = 0; l < 8; ++l)
        for (int m = 0; m < 8; ++m)
            for (int g = 0; g < 8; ++g) {
                const double w = fourier_amplification(l, m, g, grid, config);
                CHECK(std::abs(w) <= 1.0 + 1e-12);
                w_min = std::min(w_min, w);
            }
    CHECK(w_min == doctest::Approx(-1.0));

    // Half again past the limit, some mode diverges.
    SolverConfig unstable = config;
    unstable.dt_s = 1.5 * stability_limit(grid);
    unstable.allow_unstable = true;
    double worst = 0.0;
    for (int l = 0; l < 8; ++l)
        for (int m = 0; m < 8; ++m)
            for (int g = 0; g < 8; ++g)
                worst = std::max(worst,
                                 std::abs(fourier_amplification(l, m, g, grid, unstable)));
    CHECK(worst > 1.0);

    auto hetero = grid;
    hetero.conductivity_w_m_k[0] *= 2.0;
    CHECK_THROWS_AS(fourier_amplification(1, 1, 1, hetero, config), std::invalid_argument);
}

TEST_CASE("stepping a fourier mode multiplies it by the predicted factor") {
    const auto grid = TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 2.0, 1.0, 0.3);
    SolverConfig config;
    config.dt_s = 0.8 * stability_limit(grid);
    config.boundary = Boundary::Periodic;

    const int mode[3] = {2, 1, 3};
    auto field = TemperatureField::zero(grid);
    for (int z = 0; z < 8; ++z)
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                field.u[field.index(x, y, z)] =
                    std::cos(2.0 * std::numbers::pi *
                             (mode[0] * x + mode[1] * y + mode[2] * z) / 8.0);

    const double w = fourier_amplification(mode[0], mode[1], mode[2], grid, config);
    for (int iter = 0; iter < 50; ++iter) {
        const auto next = step(field, grid, config);
        for (std::size_t i = 0; i < field.u.size(); ++i)
            CHECK(std::abs(next.u[i] - w * field.u[i]) <= 1e-10 * std::max(1.0, std::abs(field.u[i])));
        field = next;
    }
}

TEST_CASE("stability dichotomy") {
    const auto grid = TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 2.0, 1.0, 0.0);
    const double limit = stability_limit(grid);

    SolverConfig stable;
    stable.dt_s = limit;
    stable.boundary = Boundary::Periodic;
    auto field = TemperatureField::zero(grid);
    Rng rng(21);
    for (auto& u : field.u)
        u = rng.uniform(-1.0, 1.0);
    double running_max = max_abs_elevation(field);
    for (int i = 0; i < 2000; ++i) {
        field = step(field, grid, stable);
        const double now = max_abs_elevation(field);
        CHECK(now <= running_max * (1.0 + 1e-12));
        running_max = now;
    }

    SolverConfig unstable = stable;
    unstable.dt_s = 1.1 * limit;
    unstable.allow_unstable = true;
    auto checker = TemperatureField::zero(grid);
    for (int z = 0; z < 8; ++z)
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                checker.u[checker.index(x, y, z)] = ((x + y + z) % 2 == 0) ? 1.0 : -1.0;
    const double initial = max_abs_elevation(checker);
    bool grew = false;
    for (int i = 0; i < 200 && !grew; ++i) {
        checker = step(checker, grid, unstable);
        grew = max_abs_elevation(checker) >= 1e3 * initial;
    }
    CHECK(grew);
}

TEST_CASE("the guard rejects unstable steps unless overridden") {
    const auto grid = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, 2.0, 1.0, 0.0);
    SolverConfig config = insulated(1.1 * stability_limit(grid));
    const auto field = TemperatureField::zero(grid);
    CHECK_THROWS_AS(step(field, grid, config), std::domain_error);
    config.allow_unstable = true;
    CHECK_NOTHROW(step(field, grid, config));
}

TEST_CASE("maximum principle holds for source-free insulated runs") {
    const auto grid = TissueGrid::uniform(6, 6, 6, 1.0, 1.0, 1.0, 0.3, 0.5);
    SolverConfig config = insulated(stability_limit(grid));
    auto field = TemperatureField::zero(grid);
    Rng rng(23);
    for (auto& u : field.u)
        u = rng.uniform(-2.0, 2.0);
    double hi = *std::max_element(field.u.begin(), field.u.end());
    double lo = *std::min_element(field.u.begin(), field.u.end());
    for (int i = 0; i < 500; ++i) {
        field = step(field, grid, config);
        const double now_hi = *std::max_element(field.u.begin(), field.u.end());
        const double now_lo = *std::min_element(field.u.begin(), field.u.end());
        CHECK(now_hi <= hi + 1e-12);
        // Perfusion pulls everything toward zero, so the minimum may only
        // rise when it is negative; it never undershoots.
        CHECK(now_lo >= std::min(lo, 0.0) - 1e-12);
        hi = now_hi;
        lo = now_lo;
    }
}

TEST_CASE("the update is linear in the source field") {
    auto grid_a = TissueGrid::uniform(5, 5, 5, 1e-3, 1000.0, 3500.0, 0.5, 8000.0);
    auto grid_b = grid_a;
    auto grid_ab = grid_a;
    Rng rng(25);
    for (std::size_t i = 0; i < grid_a.size(); ++i) {
        grid_a.sar_w_kg[i] = rng.uniform(0.0, 5.0);
        grid_b.sar_w_kg[i] = rng.uniform(0.0, 5.0);
        grid_ab.sar_w_kg[i] = grid_a.sar_w_kg[i] + grid_b.sar_w_kg[i];
    }
    SolverConfig config;
    config.dt_s = 0.9 * stability_limit(grid_a);
    config.total_time_s = config.dt_s * 200;

    const auto ua = solve(grid_a, config);
    const auto ub = solve(grid_b, config);
    const auto uab = solve(grid_ab, config);
    for (std::size_t i = 0; i < ua.u.size(); ++i) {
        const double expected = ua.u[i] + ub.u[i];
        CHECK(std::abs(uab.u[i] - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("solver guards") {
    const auto grid = TissueGrid::uniform(4, 4, 4, 1.0, 1.0, 2.0, 1.0, 0.0);
    SolverConfig config = insulated(0.25);
    config.total_time_s = 0.26; // not a multiple of dt
    CHECK_THROWS_AS(solve(grid, config), std::invalid_argument);
    CHECK_THROWS_AS(TissueGrid::uniform(1, 4, 4, 1.0, 1.0, 1.0, 1.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_with_power(grid, config, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_with_power(grid, config, 1.0, 0.0), std::invalid_argument);
}
