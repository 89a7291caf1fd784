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

#include <cmath>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

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

namespace {

using namespace trsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitConstraint = 2;
constexpr int kExitStability = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::int64_t seed = -1;       // <0: keep the config value
    int iterations = -1;
};

cfg::ScenarioConfig load_config(const CommonOpts& opts) {
    cfg::ScenarioConfig config = opts.config_path.empty()
                                     ? cfg::ScenarioConfig{}
                                     : cfg::ScenarioConfig::from_file(opts.config_path);
    if (opts.seed >= 0)
        config.seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.iterations > 0)
        config.iterations = opts.iterations;
    config.validate();
    return config;
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config file (key = value)");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--iterations", opts.iterations, "override the iteration count");
}

int cmd_run(const CommonOpts& opts, bool strict) {
    const cfg::ScenarioConfig config = load_config(opts);
    const scenario::RunResults results = scenario::run_scenario(config);
    scenario::emit_outputs(results, opts.out_dir);

    std::cout << "run: " << config.iterations << " iterations, " << config.n_users
              << " users per cell (" << config.tr_users << " low-emission)\n";
    std::cout << "  mean power all-active " << csv::format_double(results.am_cell.mean_total_power_w)
              << " W, mixed " << csv::format_double(results.mixed_cell.mean_total_power_w)
              << " W\n";
    for (const auto& row : results.constraints.rows)
        std::cout << "  constraint " << row.name << ": "
                  << (row.satisfied ? "satisfied" : "violated") << " (min margin "
                  << csv::format_double(row.min_margin) << ")\n";
    std::cout << "  outputs in " << opts.out_dir << "\n";

    if (strict && !results.constraints.all_satisfied())
        return kExitConstraint;
    return kExitOk;
}

int cmd_exposure(const CommonOpts& opts) {
    const cfg::ScenarioConfig config = load_config(opts);
    auto skin = exposure::default_skin_layers();
    skin[0].thickness_mm = config.exposure.epidermis_thickness_mm;
    skin[1].thickness_mm = config.exposure.sat_thickness_mm;
    skin[2].thickness_mm = config.exposure.muscle_thickness_mm;

    const double f = config.channel.frequency_hz;
    const auto build = [&](double incident, const char* label) {
        return exposure::sar_depth_profile(
            exposure::pd_depth_profile(skin, incident, f, config.exposure.profile_depth_mm,
                                       config.exposure.profile_step_mm, label),
            skin);
    };
    const auto am = build(config.exposure.incident_pd_am_mw_cm2, "am");
    const auto tr = build(config.exposure.incident_pd_tr_mw_cm2, "tr");

    // Homogeneous reference media, at the published surface level.
    std::vector<exposure::TissueLayer> alekseev_skin = {
        {"skin", skin[0].thickness_mm + skin[1].thickness_mm + skin[2].thickness_mm, 1109.0,
         exposure::alekseev_params()}};
    std::vector<exposure::TissueLayer> chahat_skin = {
        {"skin", alekseev_skin[0].thickness_mm, 1109.0, exposure::chahat_params()}};
    const auto alekseev = exposure::sar_depth_profile(
        exposure::pd_depth_profile(alekseev_skin, 0.62, f, config.exposure.profile_depth_mm,
                                   config.exposure.profile_step_mm, "alekseev"),
        alekseev_skin);
    const auto chahat = exposure::sar_depth_profile(
        exposure::pd_depth_profile(chahat_skin, 0.62, f, config.exposure.profile_depth_mm,
                                   config.exposure.profile_step_mm, "chahat"),
        chahat_skin);

    std::filesystem::create_directories(opts.out_dir);
    {
        std::string out = "depth_mm,alekseev_pd,chahat_pd,am_pd,tr_pd\n";
        for (std::size_t i = 0; i < am.depth_mm.size(); ++i) {
            out += csv::format_double(am.depth_mm[i]) + ',' +
                   csv::format_double(alekseev.pd_mw_cm2[i]) + ',' +
                   csv::format_double(chahat.pd_mw_cm2[i]) + ',' +
                   csv::format_double(am.pd_mw_cm2[i]) + ',' + csv::format_double(tr.pd_mw_cm2[i]) +
                   '\n';
        }
        csv::write_file(opts.out_dir + "/pd_profile.csv", out);
    }
    {
        std::string out = "depth_mm,alekseev_sar,chahat_sar,am_sar,tr_sar\n";
        for (std::size_t i = 0; i < am.depth_mm.size(); ++i) {
            out += csv::format_double(am.depth_mm[i]) + ',' +
                   csv::format_double(alekseev.sar_w_kg[i]) + ',' +
                   csv::format_double(chahat.sar_w_kg[i]) + ',' +
                   csv::format_double(am.sar_w_kg[i]) + ',' + csv::format_double(tr.sar_w_kg[i]) +
                   '\n';
        }
        csv::write_file(opts.out_dir + "/sar_profile.csv", out);
    }

    const auto absorption = exposure::layer_absorption(skin, config.exposure.incident_pd_am_mw_cm2, f);
    std::cout << "exposure profiles written to " << opts.out_dir << "\n";
    for (const auto& layer : absorption)
        std::cout << "  " << layer.layer << ": absorbs "
                  << csv::format_double(layer.absorbed_fraction * 100.0) << "% of incident\n";
    return kExitOk;
}

int cmd_bioheat(const CommonOpts& opts, bool unstable_ok) {
    const cfg::ScenarioConfig config = load_config(opts);
    const auto& bh = config.bioheat;
    const auto grid = bioheat::TissueGrid::uniform(bh.grid_nx, bh.grid_ny, bh.grid_nz,
                                                   bh.spacing_m, bh.density_kg_m3,
                                                   bh.heat_capacity_j_kg_k, bh.conductivity_w_m_k,
                                                   bh.perfusion_w_m3_k);
    const double limit = bioheat::stability_limit(grid);

    bioheat::SolverConfig solver;
    solver.boundary_h_w_m2_k = bh.boundary_h_w_m2_k;
    solver.ambient_temp_k = bh.ambient_temp_k;
    solver.blood_temp_k = bh.blood_temp_k;
    solver.allow_unstable = unstable_ok;
    solver.dt_s = bh.dt_s > 0.0 ? bh.dt_s : 0.9 * limit;
    const auto steps = std::max<std::int64_t>(1, std::llround(bh.total_time_s / solver.dt_s));
    solver.total_time_s = static_cast<double>(steps) * solver.dt_s;

    std::cout << "stability limit " << csv::format_double(limit) << " s, dt "
              << csv::format_double(solver.dt_s) << " s, " << steps << " steps\n";
    if (solver.dt_s > limit && !unstable_ok) {
        std::cerr << "bioheat: dt exceeds the stability limit (pass --unstable-ok to force)\n";
        return kExitStability;
    }

    std::filesystem::create_directories(opts.out_dir);
    std::string summary = "cell,peak_elevation_k,mean_elevation_k,steps,dt_s,warm_sensation\n";
    double peaks[2] = {0.0, 0.0};
    const char* labels[2] = {"am", "tr"};
    const double powers[2] = {bh.power_am_w, bh.power_tr_w};
    for (int i = 0; i < 2; ++i) {
        const auto field = bioheat::solve_with_power(grid, solver, powers[i], bh.mass_kg);
        peaks[i] = bioheat::peak_elevation(field);
        summary += std::string(labels[i]) + ',' + csv::format_double(peaks[i]) + ',' +
                   csv::format_double(bioheat::mean_elevation(field)) + ',' +
                   std::to_string(steps) + ',' + csv::format_double(solver.dt_s) + ',' +
                   (bioheat::warm_sensation(field) ? "true" : "false") + '\n';

        // Mid-plane slice for plotting.
        std::string slice = "x,y,z,u_k\n";
        const int zc = grid.nz / 2;
        for (int y = 0; y < grid.ny; ++y)
            for (int x = 0; x < grid.nx; ++x)
                slice += std::to_string(x) + ',' + std::to_string(y) + ',' + std::to_string(zc) +
                         ',' + csv::format_double(field.u[field.index(x, y, zc)]) + '\n';
        csv::write_file(opts.out_dir + "/temperature_slice_" + labels[i] + ".csv", slice);
    }
    csv::write_file(opts.out_dir + "/temperature_summary.csv", summary);

    std::string pattern = "azimuth_deg,elevation_deg,am_peak_k,tr_peak_k\n";
    for (int el = -90; el <= 90; el += 10)
        for (int az = 0; az < 360; az += 10) {
            const double elr = el * std::numbers::pi / 180.0;
            const double azr = az * std::numbers::pi / 180.0;
            const double g = std::cos(elr) * std::cos(elr) * (0.6 + 0.4 * std::cos(azr));
            pattern += std::to_string(az) + ',' + std::to_string(el) + ',' +
                       csv::format_double(peaks[0] * g) + ',' + csv::format_double(peaks[1] * g) +
                       '\n';
        }
    csv::write_file(opts.out_dir + "/radiation_pattern.csv", pattern);

    std::cout << "peak elevation am " << csv::format_double(peaks[0]) << " K, tr "
              << csv::format_double(peaks[1]) << " K; outputs in " << opts.out_dir << "\n";
    return kExitOk;
}

int cmd_compare(const CommonOpts& opts, const std::string& data_path, double depth_mm) {
    const auto ref = data_path.empty() ? datasets::load_pd_reference()
                                       : datasets::load_pd_reference(data_path);
    const auto report = exposure::comparative_report(ref.profiles, depth_mm);

    std::filesystem::create_directories(opts.out_dir);
    csv::write_file(opts.out_dir + "/table4_report.csv", csv::to_string(ref.raw));
    std::string reductions = "versus,other_pd_mw_cm2,tr_pd_mw_cm2,percent_reduction\n";
    for (const auto& row : report.reductions)
        reductions += row.versus + ',' + csv::format_double(row.other_pd_mw_cm2) + ',' +
                      csv::format_double(row.tr_pd_mw_cm2) + ',' +
                      csv::format_double(row.percent_reduction) + '\n';
    csv::write_file(opts.out_dir + "/table4_reductions.csv", reductions);

    std::cout << exposure::to_text(report);
    return kExitOk;
}

int cmd_channel(const CommonOpts& opts, int n_samples, int n_taps, double mean_gain) {
    const cfg::ScenarioConfig config = load_config(opts);
    std::filesystem::create_directories(opts.out_dir);

    std::vector<double> envelopes(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const auto ch = channel::sample_channel(mix_seed(config.seed, static_cast<std::uint64_t>(i)),
                                                n_taps, mean_gain, config.channel.delay_spread_s);
        envelopes[static_cast<std::size_t>(i)] = std::abs(channel::snapshot(ch).coefficient);
    }
    const double d = channel::envelope_ks_statistic(envelopes, mean_gain);
    const double crit = channel::ks_critical_value_1pct(envelopes.size());
    std::cout << "envelope ks statistic " << csv::format_double(d) << " vs critical "
              << csv::format_double(crit) << " -> " << (d < crit ? "consistent" : "inconsistent")
              << " with a Rayleigh envelope\n";

    const auto ch = channel::sample_channel(config.seed, n_taps, mean_gain,
                                            config.channel.delay_spread_s);
    std::string pdp = "delay_s,power\n";
    for (const auto& [delay, power] : channel::power_delay_profile(ch))
        pdp += csv::format_double(delay) + ',' + csv::format_double(power) + '\n';
    csv::write_file(opts.out_dir + "/power_delay_profile.csv", pdp);

    const auto reference = datasets::load_channel_reference();
    bool monotone = true;
    for (std::size_t i = 1; i < reference.size(); ++i)
        monotone = monotone && reference[i].gain < reference[i - 1].gain;
    std::cout << "reference gains: " << reference.size() << " rows, "
              << (monotone ? "monotone decreasing" : "NOT monotone") << "\n";
    std::cout << "power-delay profile written to " << opts.out_dir << "\n";
    return kExitOk;
}

int cmd_validate(const CommonOpts& opts) {
    const cfg::ScenarioConfig base = load_config(opts);
    int failures = 0;
    const auto check = [&](const char* name, bool ok) {
        std::cout << (ok ? "[pass] " : "[FAIL] ") << name << "\n";
        if (!ok)
            ++failures;
    };

    {
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            const auto ch = channel::sample_channel(mix_seed(7, static_cast<std::uint64_t>(i)), 8, 1.0);
            const auto snap = channel::snapshot(ch);
            ok = ok && std::abs(snap.gain - std::norm(snap.coefficient)) <=
                           1e-12 * std::max(1.0, snap.gain);
        }
        check("channel gain consistency", ok);
    }
    {
        Rng rng(11);
        bool ok = true;
        for (int i = 0; i < 1000; ++i) {
            power::ApplicationClass app{AppId::A1Text, rng.uniform(1e3, 5e6), rng.uniform(1e5, 2e7)};
            const double h = rng.uniform(1e-14, 1e-9);
            const double noise = rng.uniform(1e-14, 1e-12);
            const double p = power::optimum_power(app, h, noise);
            const double back = app.bandwidth_hz * std::log2(1.0 + p * h / noise);
            ok = ok && std::abs(back - app.target_rate_bps) <= 1e-9 * app.target_rate_bps;
        }
        check("rate inversion round-trip", ok);
    }
    {
        bool ok = true;
        for (int t = -1200; t <= -500; t += 5) {
            const double ss = t / 10.0;
            const UeMode m = mode::d2_decide(ss, base.decision, UeMode::Active);
            ok = ok && ((m == UeMode::ThermalRadiation) == (ss < base.decision.ss_threshold_dbm));
        }
        check("decision threshold soundness", ok);
    }
    {
        Rng rng(13);
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            exposure::DielectricParams debye{exposure::DielectricModel::Debye,
                                             1.0 + rng.uniform(0, 50),
                                             {rng.uniform(0, 60)},
                                             {rng.uniform(1e-12, 2e-11)},
                                             0.0,
                                             rng.uniform(0, 2)};
            auto cole = debye;
            cole.model = exposure::DielectricModel::ColeCole;
            const double f = rng.uniform(1e9, 1e11);
            ok = ok && complex_permittivity(debye, f) == complex_permittivity(cole, f);
        }
        check("broadening-free relaxation reduction", ok);
    }
    {
        const auto grid = bioheat::TissueGrid::uniform(8, 8, 8, 1.0, 1.0, 2.0, 1.0, 0.0);
        bioheat::SolverConfig solver;
        solver.dt_s = bioheat::stability_limit(grid);
        solver.boundary_h_w_m2_k = 0.0;
        auto field = bioheat::TemperatureField::zero(grid);
        field.u[field.index(4, 4, 4)] = 1.0;
        double energy0 = 0.0;
        for (double u : field.u)
            energy0 += u;
        for (int i = 0; i < 50; ++i)
            field = bioheat::step(field, grid, solver);
        double energy1 = 0.0;
        for (double u : field.u)
            energy1 += u;
        check("insulated source-free conservation",
              std::abs(energy1 - energy0) <= 1e-9 * std::abs(energy0));
    }
    {
        cfg::ScenarioConfig small = base;
        small.n_users = 10;
        small.tr_users = 4;
        small.iterations = 3;
        const auto a = scenario::run_scenario(small);
        const auto b = scenario::run_scenario(small);
        check("scenario determinism",
              scenario::render_outputs(a) == scenario::render_outputs(b) &&
                  a.constraints.all_satisfied());
    }

    std::cout << (failures == 0 ? "all checks passed\n" : "checks failed\n");
    return failures == 0 ? kExitOk : kExitConstraint;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thermal-mode cellular exposure simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, exposure_opts, bioheat_opts, compare_opts, channel_opts, validate_opts;
    bool strict = false;
    bool unstable_ok = false;
    std::string compare_data;
    double compare_depth = 0.4;
    int channel_samples = 100000;
    int channel_taps = 8;
    double channel_mean_gain = 1.0;

    auto* run = app.add_subcommand("run", "full two-cell Monte Carlo experiment");
    add_common(run, run_opts);
    run->add_flag("--strict", strict, "exit nonzero when a dominance constraint is violated");

    auto* exposure_cmd = app.add_subcommand("exposure", "depth profiles of power density and SAR");
    add_common(exposure_cmd, exposure_opts);

    auto* bioheat_cmd = app.add_subcommand("bioheat", "tissue heating solve with stability check");
    add_common(bioheat_cmd, bioheat_opts);
    bioheat_cmd->add_flag("--unstable-ok", unstable_ok,
                          "run past the stability limit (divergence studies)");

    auto* compare_cmd = app.add_subcommand("compare", "published power-density comparison table");
    add_common(compare_cmd, compare_opts);
    compare_cmd->add_option("--data", compare_data, "alternate reference csv");
    compare_cmd->add_option("--depth", compare_depth, "comparison depth in mm");

    auto* channel_cmd = app.add_subcommand("channel", "channel diagnostics: envelope test, delays");
    add_common(channel_cmd, channel_opts);
    channel_cmd->add_option("--samples", channel_samples, "envelope sample count");
    channel_cmd->add_option("--taps", channel_taps, "multipath tap count");
    channel_cmd->add_option("--mean-gain", channel_mean_gain, "mean channel power");

    auto* validate_cmd = app.add_subcommand("validate", "quick property smoke checks");
    add_common(validate_cmd, validate_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(run_opts, strict);
        if (exposure_cmd->parsed())
            return cmd_exposure(exposure_opts);
        if (bioheat_cmd->parsed())
            return cmd_bioheat(bioheat_opts, unstable_ok);
        if (compare_cmd->parsed())
            return cmd_compare(compare_opts, compare_data, compare_depth);
        if (channel_cmd->parsed())
            return cmd_channel(channel_opts, channel_samples, channel_taps, channel_mean_gain);
        if (validate_cmd->parsed())
            return cmd_validate(validate_opts);
    } catch (const cfg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitStability;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
