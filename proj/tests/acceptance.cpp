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
//
// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include "trsim/bioheat.hpp"
#include "trsim/channel.hpp"
#include "trsim/config.hpp"
#include "trsim/csv.hpp"
#include "trsim/datasets.hpp"
#include "trsim/exposure.hpp"
#include "trsim/mode.hpp"
#include "trsim/power.hpp"
#include "trsim/rng.hpp"
#include "trsim/scenario.hpp"

using namespace trsim;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void require(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        g_notes.push_back(what);
    }
}

void criterion(int number, const std::string& title, double limit_s,
               const std::function<void()>& body) {
    const int failures_before = g_failures;
    g_notes.clear();
    const auto start = std::chrono::steady_clock::now();
    try {
        body();
    } catch (const std::exception& e) {
        require(false, std::string("unexpected exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(elapsed < limit_s, "runtime " + std::to_string(elapsed) + " s exceeds " +
                                   std::to_string(limit_s) + " s");
    const bool ok = g_failures == failures_before;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << title << " ("
              << csv::format_double(elapsed) << " s)\n";
    for (const auto& note : g_notes)
        std::cout << "       " << note << "\n";
}

double rel_err(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

} // namespace

int main() {
    // 1. Reference power-density table reproduced verbatim, with the
    //    documented reduction at 0.4 mm.
    criterion(1, "reference pd table regression and 50% reduction", 1.0, [] {
        const auto ref = datasets::load_pd_reference();
        const double expected[6][4] = {
            {0.62, 0.62, 0.50, 0.41}, {0.32, 0.38, 0.31, 0.21}, {0.16, 0.17, 0.22, 0.11},
            {0.09, 0.10, 0.14, 0.09}, {0.03, 0.02, 0.10, 0.05}, {0.01, 0.01, 0.05, 0.01}};
        const double depths[6] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
        require(ref.raw.rows.size() == 6, "expected 6 depth rows");
        for (int r = 0; r < 6; ++r) {
            require(ref.depth_mm[r] == depths[r], "depth grid mismatch");
            for (int c = 0; c < 4; ++c)
                require(ref.profiles[c].pd_mw_cm2[r] == expected[r][c],
                        "pd value mismatch at row " + std::to_string(r));
        }
        // Emitted report echoes the bundled file byte for byte.
        const std::string echoed = csv::to_string(ref.raw);
        const std::string bundled = csv::read_text_file(datasets::pd_reference_csv_path());
        require(echoed == bundled, "emitted table differs from the bundled bytes");
        require(echoed.find("0.0,0.62,0.62,0.50,0.41\n") != std::string::npos,
                "first data row not verbatim");

        const auto report = exposure::comparative_report(ref.profiles, 0.4);
        double vs_am = -1.0;
        for (const auto& row : report.reductions)
            if (row.versus == "am")
                vs_am = row.percent_reduction;
        require(std::abs(vs_am - 50.0) <= 0.1,
                "tr-vs-am reduction at 0.4 mm outside 50.0 +/- 0.1");
    });

    // 2. Dominant absorption within the surface layer at 30 GHz.
    criterion(2, "surface layer absorbs at least 85% of incident power", 1.0, [] {
        const auto absorption =
            exposure::layer_absorption(exposure::default_skin_layers(), 1.0, 30e9);
        require(absorption.front().absorbed_fraction >= 0.85,
                "surface fraction " + std::to_string(absorption.front().absorbed_fraction));
    });

    // 3. Explicit-step stability dichotomy with the Fourier oracle.
    criterion(3, "stability dichotomy at the explicit limit", 10.0, [] {
        const auto grid = bioheat::TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 2.0, 1.0, 0.0);
        const double limit = bioheat::stability_limit(grid);

        bioheat::SolverConfig stable;
        stable.dt_s = limit;
        stable.boundary = bioheat::Boundary::Periodic;
        auto field = bioheat::TemperatureField::zero(grid);
        Rng rng(2024);
        for (auto& u : field.u)
            u = rng.uniform(-1.0, 1.0);
        double running_max = bioheat::max_abs_elevation(field);
        bool monotone = true;
        for (int i = 0; i < 10000; ++i) {
            field = bioheat::step(field, grid, stable);
            const double now = bioheat::max_abs_elevation(field);
            monotone = monotone && now <= running_max * (1.0 + 1e-12);
            running_max = now;
        }
        require(monotone, "max |u| grew at the stability limit");

        bioheat::SolverConfig unstable = stable;
        unstable.dt_s = 1.1 * limit;
        unstable.allow_unstable = true;
        auto checker = bioheat::TemperatureField::zero(grid);
        for (int z = 0; z < 8; ++z)
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    checker.u[checker.index(x, y, z)] = ((x + y + z) % 2 == 0) ? 1.0 : -1.0;
        bool grew = false;
        for (int i = 0; i < 10000 && !grew; ++i) {
            checker = bioheat::step(checker, grid, unstable);
            grew = bioheat::max_abs_elevation(checker) >= 1e3;
        }
        require(grew, "1.1x the limit failed to grow by 1e3");

        // Fourier oracle against direct stepping, one mode, periodic grid.
        bioheat::SolverConfig oracle_cfg;
        oracle_cfg.dt_s = 0.8 * limit;
        oracle_cfg.boundary = bioheat::Boundary::Periodic;
        auto mode_field = bioheat::TemperatureField::zero(grid);
        for (int z = 0; z < 8; ++z)
            for (int y = 0; y < 8; ++y)
                for (int x = 0; x < 8; ++x)
                    mode_field.u[mode_field.index(x, y, z)] =
                        std::cos(2.0 * std::numbers::pi * (3 * x + 2 * y + z) / 8.0);
        const double w = bioheat::fourier_amplification(3, 2, 1, grid, oracle_cfg);
        bool oracle_ok = true;
        for (int i = 0; i < 100; ++i) {
            const auto next = bioheat::step(mode_field, grid, oracle_cfg);
            for (std::size_t c = 0; c < next.u.size(); ++c)
                oracle_ok = oracle_ok && std::abs(next.u[c] - w * mode_field.u[c]) <=
                                             1e-10 * std::max(1.0, std::abs(mode_field.u[c]));
            mode_field = next;
        }
        require(oracle_ok, "stepping disagrees with the fourier factor beyond 1e-10");
    });

    // 4. Source linearity and relaxation of the heating solver.
    criterion(4, "bioheat relaxation and source linearity", 10.0, [] {
        const auto grid = bioheat::TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 1.0, 0.2, 1.0);
        bioheat::SolverConfig config;
        config.dt_s = 0.5;
        config.boundary_h_w_m2_k = 0.0;
        config.total_time_s = 25.0;

        auto initial = bioheat::TemperatureField::zero(grid);
        for (auto& u : initial.u)
            u = 0.5;
        const auto relaxed = bioheat::solve(grid, config, &initial);
        require(bioheat::max_abs_elevation(relaxed) <= 1e-6,
                "zero-source solve did not relax to zero elevation");

        config.total_time_s = 40.0;
        const auto full = bioheat::solve_with_power(grid, config, 1.0, 1.0);
        const auto half = bioheat::solve_with_power(grid, config, 0.5, 1.0);
        const double ratio = bioheat::peak_elevation(half) / bioheat::peak_elevation(full);
        require(rel_err(ratio, 0.5) <= 1e-6, "halved source ratio " + std::to_string(ratio));
        require(bioheat::peak_elevation(half) < bioheat::peak_elevation(full),
                "reduced-power peak not below full-power peak");
    });

    // 5. Rate-formula inversion round-trip.
    criterion(5, "optimum power round-trips the rate formula", 1.0, [] {
        Rng rng(909);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            power::ApplicationClass app{AppId::A1Text, rng.uniform(1e3, 1e7),
                                        rng.uniform(1e5, 2e7)};
            const double h = rng.uniform(1e-15, 1e-8);
            const double noise = rng.uniform(1e-14, 1e-11);
            const double p = power::optimum_power(app, h, noise);
            const double back = app.bandwidth_hz * std::log2(1.0 + p * h / noise);
            worst = std::max(worst, std::abs(back - app.target_rate_bps) / app.target_rate_bps);
        }
        require(worst <= 1e-9, "worst relative rate error " + std::to_string(worst));
    });

    // 6. Rayleigh envelope statistics and the bundled channel table.
    criterion(6, "channel envelope is Rayleigh and the gain table decays", 5.0, [] {
        constexpr int n = 100000;
        std::vector<double> envelopes(n);
        for (int i = 0; i < n; ++i)
            envelopes[i] =
                std::abs(channel::snapshot(channel::sample_channel(i, 8, 1.0)).coefficient);
        std::sort(envelopes.begin(), envelopes.end());
        double d = 0.0;
        for (std::size_t i = 0; i < envelopes.size(); ++i) {
            const double cdf = 1.0 - std::exp(-envelopes[i] * envelopes[i]);
            d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
            d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
        }
        require(d < 1.62762 / std::sqrt(static_cast<double>(n)),
                "ks statistic " + std::to_string(d));

        const auto rows = datasets::load_channel_reference();
        require(rows.size() == 5, "expected 5 reference rows");
        bool monotone = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
            monotone = monotone && rows[i].gain < rows[i - 1].gain;
        require(monotone, "reference gain column is not decreasing");
    });

    // 7. Decision soundness across the sweep, with suspension honoured.
    criterion(7, "mode decisions match the threshold over the full sweep", 1.0, [] {
        const mode::DecisionConfig config;
        const std::array demand = {AppId::A1Text, AppId::A2Voice, AppId::A3Video};
        std::vector<mode::SlotObservation> sweep;
        for (int t = -1200; t <= -500; ++t) {
            mode::SlotObservation obs;
            obs.ss_dbm = t / 10.0;
            sweep.push_back(obs);
        }
        const auto trace = mode::adaptive_switch(sweep, demand, 2e6, config);
        bool sound = true;
        bool video_suspended = true;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const bool low = trace[i].mode == UeMode::ThermalRadiation;
            sound = sound && (low == (sweep[i].ss_dbm < -99.0));
            if (low)
                for (const auto& link : trace[i].links)
                    video_suspended = video_suspended && link.app != AppId::A3Video;
        }
        require(sound, "decision differs from the -99 dBm rule somewhere in the sweep");
        require(video_suspended, "a video link appeared in a low-emission slot");

        // No uplink NAS transport is accepted while downlink-only.
        mode::RrcMachine machine;
        machine.transition(mode::RrcEvent::SetupRequest);
        machine.transition(mode::RrcEvent::SetupComplete);
        machine.transition(mode::RrcEvent::ModeIdentifiedTr);
        machine.transition(mode::RrcEvent::DownlinkNasTransport);
        bool rejected = false;
        try {
            machine.transition(mode::RrcEvent::UplinkNasTransport);
        } catch (const mode::ProtocolViolation&) {
            rejected = true;
        }
        require(rejected, "uplink NAS transport was not rejected in the downlink-only state");

        // Published operator rows classify to their own bands.
        const auto profiles = mode::load_operator_profiles(datasets::operators_csv_path());
        require(profiles.size() == 3, "expected 3 operator rows");
        for (const auto& p : profiles) {
            require(mode::classify_signal(p.great_dbm, p) == SignalBand::Great, p.name + " great");
            require(mode::classify_signal(p.good_dbm, p) == SignalBand::Good, p.name + " good");
            require(mode::classify_signal(p.average_dbm, p) == SignalBand::Average,
                    p.name + " average");
            require(mode::classify_signal(p.poor_dbm, p) == SignalBand::Poor, p.name + " poor");
            require(mode::classify_signal(p.very_poor_dbm, p) == SignalBand::VeryPoor,
                    p.name + " very poor");
        }
    });

    // 8. Two-cell dominance at the default 50-user, 30/20 split.
    criterion(8, "mixed cell dominates the all-active cell", 30.0, [] {
        const cfg::ScenarioConfig config; // library defaults: 50 users, 20 low, 100 iterations
        const auto results = scenario::run_scenario(config);
        require(results.power_saved_w.size() == 100, "expected 100 iterations");
        bool power_ok = true, sar_ok = true, pd_ok = true, complexity_ok = true;
        for (std::size_t i = 0; i < results.power_saved_w.size(); ++i) {
            power_ok = power_ok &&
                       results.mixed_cell.total_power_w[i] < results.am_cell.total_power_w[i];
            sar_ok = sar_ok && results.mixed_cell.aggregate_sar_w_kg[i] <
                                   results.am_cell.aggregate_sar_w_kg[i];
            pd_ok = pd_ok && results.mixed_cell.aggregate_pd_w_m2[i] <
                                 results.am_cell.aggregate_pd_w_m2[i];
            complexity_ok = complexity_ok &&
                            results.mixed_cell.complexity[i] / results.am_cell.complexity[i] ==
                                260.0 / 300.0;
        }
        require(power_ok, "total power dominance failed in some iteration");
        require(sar_ok, "sar dominance failed in some iteration");
        require(pd_ok, "pd dominance failed in some iteration");
        require(complexity_ok, "complexity ratio is not exactly 260/300");
        require(results.mixed_cell.mean_ee_bits_per_joule >=
                    results.am_cell.mean_ee_bits_per_joule,
                "mixed-cell efficiency below the all-active cell");
        require(results.constraints.all_satisfied(), "dominance report not satisfied");
    });

    // 9. Byte-identical output trees for identical seeds.
    criterion(9, "two identical runs produce identical output trees", 60.0, [] {
#ifdef TRSIM_CLI_PATH
        namespace fs = std::filesystem;
        const fs::path base = fs::temp_directory_path() / "trsim_acceptance";
        fs::remove_all(base);
        fs::create_directories(base);
        const std::string cli = TRSIM_CLI_PATH;
        for (const char* run : {"a", "b"}) {
            const std::string cmd = cli + " run --seed 42 --iterations 40 --out " +
                                    (base / run).string() + " > /dev/null";
            require(std::system(cmd.c_str()) == 0, "cli run failed");
        }
        std::vector<fs::path> names;
        for (const auto& entry : fs::directory_iterator(base / "a"))
            names.push_back(entry.path().filename());
        require(!names.empty(), "first run produced no files");
        std::sort(names.begin(), names.end());
        for (const auto& name : names) {
            const auto a = csv::read_text_file((base / "a" / name).string());
            const auto b = csv::read_text_file((base / "b" / name).string());
            require(a == b, "output differs: " + name.string());
        }
        fs::remove_all(base);
#else
        require(false, "cli path not configured");
#endif
    });

    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " acceptance check(s) failed\n";
    return 1;
}
