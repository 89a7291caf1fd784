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

#include "trsim/scenario.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "trsim/bioheat.hpp"
#include "trsim/channel.hpp"
#include "trsim/csv.hpp"
#include "trsim/datasets.hpp"
#include "trsim/mode.hpp"
#include "trsim/power.hpp"
#include "trsim/rng.hpp"

namespace trsim::scenario {

namespace {

constexpr std::string_view kVersion = "0.1.0";

std::uint64_t fnv1a_append(std::uint64_t hash, double value) {
    const auto bits = std::bit_cast<std::uint64_t>(value);
    for (int shift = 0; shift < 64; shift += 8) {
        hash ^= (bits >> shift) & 0xffULL;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

struct UserDraw {
    double ss_dbm = 0.0;
    double gain = 0.0;
    bool low_signal = false;
};

// One set of channel states per iteration; both cells consume the identical
// draws so every comparison is paired.
std::vector<UserDraw> draw_users(const cfg::ScenarioConfig& c, int iteration) {
    std::vector<UserDraw> draws(static_cast<std::size_t>(c.n_users));
    const int n_am = c.n_users - c.tr_users;
    for (int j = 0; j < c.n_users; ++j) {
        Rng rng(mix_seed(c.seed, static_cast<std::uint64_t>(iteration),
                         static_cast<std::uint64_t>(j)));
        UserDraw& d = draws[static_cast<std::size_t>(j)];
        d.low_signal = j >= n_am;
        const double lo = d.low_signal ? c.zones.tr_band_low_dbm : c.zones.am_band_low_dbm;
        const double hi = d.low_signal ? c.zones.tr_band_high_dbm : c.zones.am_band_high_dbm;
        d.ss_dbm = rng.uniform(lo, hi);
        d.gain = std::pow(10.0, (d.ss_dbm - c.channel.tx_ref_dbm) / 10.0);
    }
    return draws;
}

std::vector<power::ApplicationClass> applications(const cfg::ScenarioConfig& c) {
    return {
        {AppId::A1Text, c.power.a1_rate_bps, c.channel.bandwidth_hz},
        {AppId::A2Voice, c.power.a2_rate_bps, c.channel.bandwidth_hz},
        {AppId::A3Video, c.power.a3_rate_bps, c.channel.bandwidth_hz},
    };
}

struct UserPower {
    double per_app[3] = {0.0, 0.0, 0.0};
    double low_power_set = 0.0;  // text + voice
    double full_set = 0.0;       // all three
    double rate_low = 0.0;
    double rate_full = 0.0;
};

UserPower user_power(const std::vector<power::ApplicationClass>& apps, double gain,
                     double noise_var_w) {
    UserPower p;
    for (std::size_t a = 0; a < apps.size(); ++a) {
        p.per_app[a] = power::optimum_power(apps[a], gain, noise_var_w);
        p.full_set += p.per_app[a];
        p.rate_full += apps[a].target_rate_bps;
        if (apps[a].id != AppId::A3Video) {
            p.low_power_set += p.per_app[a];
            p.rate_low += apps[a].target_rate_bps;
        }
    }
    return p;
}

struct UserState {
    UeMode mode = UeMode::Active;
    double radiated_w = 0.0;
    double rate_bps = 0.0;
    double sar_power_w = 0.0;
    double pd_power_w = 0.0;
    int dl_links = 0;
    int ul_links = 0;
    double gain = 0.0;
};

std::vector<int> user_count_steps(int n_users) {
    if (n_users == 0)
        return {0};
    std::vector<int> counts;
    for (int i = 1; i <= 10; ++i) {
        const int k = std::max(1, n_users * i / 10);
        if (counts.empty() || counts.back() != k)
            counts.push_back(k);
    }
    if (counts.back() != n_users)
        counts.push_back(n_users);
    return counts;
}

struct SimOutput {
    CellMetrics am, mixed;
    std::vector<double> power_saved_w;
    std::vector<EeSeriesRow> ee;
    std::vector<ComplexitySeriesRow> cx;
    std::string decision_trace;
    double mean_user_pd_am_w_m2 = 0.0; // all-Active cell, per user
    double mean_user_pd_tr_w_m2 = 0.0; // mixed cell, low-emission users only
    double mean_harvested_w = 0.0;     // splitter output of the low-emission users
    int rrc_low_emission_users = 0;
    power::FrameReport frame_report;
};

// The Monte Carlo core shared by run_scenario and the series accessors.
SimOutput simulate(const cfg::ScenarioConfig& c, bool with_series) {
    c.validate();
    const auto apps = applications(c);
    const std::array demand = {AppId::A1Text, AppId::A2Voice, AppId::A3Video};
    const int n_am = c.n_users - c.tr_users;

    SimOutput out;
    out.am.label = "all_am";
    out.mixed.label = "mixed";
    out.am.draw_hash = kFnvOffset;
    out.mixed.draw_hash = kFnvOffset;

    const auto am_links =
        mode::active_links(UeMode::Active, std::span<const AppId>(demand), c.decision);
    const auto tr_links =
        mode::active_links(UeMode::ThermalRadiation, std::span<const AppId>(demand), c.decision);

    double pd_sum_am = 0.0;
    double pd_sum_tr = 0.0;
    double harvested_sum_w = 0.0;
    std::int64_t pd_count_tr = 0;

    const auto counts = with_series ? user_count_steps(c.n_users) : std::vector<int>{};

    for (int it = 0; it < c.iterations; ++it) {
        const auto draws = draw_users(c, it);

        std::vector<UserState> am_cell(draws.size());
        std::vector<UserState> mixed_cell(draws.size());
        std::vector<UserPower> powers(draws.size());

        int decided_low = 0;
        for (std::size_t j = 0; j < draws.size(); ++j) {
            const UserDraw& d = draws[j];
            out.am.draw_hash = fnv1a_append(out.am.draw_hash, d.ss_dbm);
            out.mixed.draw_hash = fnv1a_append(out.mixed.draw_hash, d.ss_dbm);
            powers[j] = user_power(apps, d.gain, c.channel.noise_var_w);

            UserState& am_u = am_cell[j];
            am_u.mode = UeMode::Active;
            am_u.gain = d.gain;
            am_u.radiated_w = powers[j].full_set;
            am_u.rate_bps = powers[j].rate_full;
            am_u.pd_power_w = powers[j].full_set;
            am_u.sar_power_w = c.exposure.sar_am_power == cfg::SarAmPower::Total
                                   ? powers[j].full_set
                                   : powers[j].full_set - powers[j].low_power_set;
            am_u.dl_links = static_cast<int>(std::count_if(
                am_links.begin(), am_links.end(),
                [](const AppLink& l) { return l.direction == LinkDirection::Downlink; }));
            am_u.ul_links = static_cast<int>(am_links.size()) - am_u.dl_links;

            UserState& mx_u = mixed_cell[j];
            mx_u.gain = d.gain;
            mx_u.mode = mode::d2_decide(d.ss_dbm, c.decision, UeMode::Active);
            if (mx_u.mode == UeMode::ThermalRadiation) {
                ++decided_low;
                // Splitter bookkeeping: the harvested share is tracked, not
                // re-injected into the uplink.
                power::PowerSplit split;
                split.alpha = c.power.alpha;
                split.gamma = c.power.gamma;
                split.p_dl_w = powers[j].low_power_set;
                split.p_total_w = powers[j].full_set;
                harvested_sum_w += power::split_power(split, d.gain).p_tr_w;
                mx_u.radiated_w = powers[j].low_power_set;
                mx_u.rate_bps = powers[j].rate_low;
                mx_u.pd_power_w = powers[j].low_power_set;
                mx_u.sar_power_w = powers[j].low_power_set;
                mx_u.dl_links = static_cast<int>(std::count_if(
                    tr_links.begin(), tr_links.end(),
                    [](const AppLink& l) { return l.direction == LinkDirection::Downlink; }));
                mx_u.ul_links = static_cast<int>(tr_links.size()) - mx_u.dl_links;
            } else {
                mx_u = am_u;
            }
        }
        if (decided_low != c.tr_users)
            throw std::logic_error("simulate: zone bands and decision threshold disagree");

        auto accumulate = [&](CellMetrics& cell, const std::vector<UserState>& users) {
            double total_power = 0.0, total_rate = 0.0, sar = 0.0, pd = 0.0;
            int dl = 0, ul = 0;
            for (const UserState& u : users) {
                total_power += u.radiated_w;
                total_rate += u.rate_bps;
                sar += exposure::sar_point(u.sar_power_w, c.exposure.tissue_mass_kg);
                pd += exposure::power_density_far_field(c.exposure.antenna_gain, u.pd_power_w,
                                                        c.exposure.reference_distance_m);
                dl += u.dl_links;
                ul += u.ul_links;
            }
            std::vector<double> radiated(1, total_power);
            const double ee = users.empty()
                                  ? 0.0
                                  : power::energy_efficiency(
                                        total_rate, radiated,
                                        c.power.p_ckt_w * static_cast<double>(c.n_users));

            double sinr_sum = 0.0;
            for (const UserState& u : users) {
                channel::InterferenceBudget budget;
                budget.from_bs_w = c.channel.t_bs_w * u.gain * c.channel.interference_coupling *
                                   static_cast<double>(dl - u.dl_links);
                budget.from_ues_w = c.channel.p_j_w * u.gain * c.channel.interference_coupling *
                                    static_cast<double>(ul - u.ul_links);
                sinr_sum +=
                    u.radiated_w * u.gain / (c.channel.noise_var_w + budget.total_w());
            }

            cell.total_power_w.push_back(total_power);
            cell.aggregate_sar_w_kg.push_back(sar);
            cell.aggregate_pd_w_m2.push_back(pd);
            cell.ee_bits_per_joule.push_back(ee);
            cell.complexity.push_back(static_cast<double>(dl + ul) *
                                      static_cast<double>(c.power.n_slots));
            cell.mean_sinr.push_back(
                users.empty() ? 0.0 : sinr_sum / static_cast<double>(users.size()));
        };
        accumulate(out.am, am_cell);
        accumulate(out.mixed, mixed_cell);
        out.power_saved_w.push_back(out.am.total_power_w.back() -
                                    out.mixed.total_power_w.back());

        for (const UserState& u : am_cell)
            pd_sum_am += exposure::power_density_far_field(c.exposure.antenna_gain, u.pd_power_w,
                                                           c.exposure.reference_distance_m);
        for (const UserState& u : mixed_cell)
            if (u.mode == UeMode::ThermalRadiation) {
                pd_sum_tr += exposure::power_density_far_field(
                    c.exposure.antenna_gain, u.pd_power_w, c.exposure.reference_distance_m);
                ++pd_count_tr;
            }

        if (with_series) {
            for (int k : counts) {
                for (const char* cell_name : {"all_am", "mixed"}) {
                    const bool mixed = std::string_view(cell_name) == "mixed";
                    for (std::size_t a = 0; a < apps.size(); ++a) {
                        double sum = 0.0;
                        int served = 0;
                        for (int j = 0; j < k; ++j) {
                            const UserState& u =
                                mixed ? mixed_cell[static_cast<std::size_t>(j)]
                                      : am_cell[static_cast<std::size_t>(j)];
                            if (!mode::serves(u.mode, apps[a].id))
                                continue;
                            sum += power::energy_efficiency(
                                apps[a].target_rate_bps,
                                powers[static_cast<std::size_t>(j)].per_app[a], c.power.p_ckt_w);
                            ++served;
                        }
                        EeSeriesRow row;
                        row.iteration = it;
                        row.active_users = k;
                        row.cell = cell_name;
                        row.app = apps[a].id;
                        row.ee_bits_per_joule = served > 0 ? sum / served : 0.0;
                        out.ee.push_back(std::move(row));
                    }
                }
            }
            out.cx.push_back({it, "all_am",
                              out.am.complexity.back() / c.power.n_slots,
                              out.am.complexity.back()});
            out.cx.push_back({it, "mixed",
                              out.mixed.complexity.back() / c.power.n_slots,
                              out.mixed.complexity.back()});
        }

        if (it == 0 && c.n_users > 0) {
            // Walk each handset of the mixed cell through the connection
            // machine; low-signal handsets end downlink-only.
            out.rrc_low_emission_users = 0;
            for (const UserState& u : mixed_cell) {
                mode::RrcMachine machine;
                machine.transition(mode::RrcEvent::SetupRequest);
                machine.transition(mode::RrcEvent::SetupComplete);
                machine.transition(u.mode == UeMode::ThermalRadiation
                                       ? mode::RrcEvent::ModeIdentifiedTr
                                       : mode::RrcEvent::ModeIdentifiedAm);
                machine.transition(mode::RrcEvent::DownlinkNasTransport);
                if (machine.state() == RrcState::EnergyEfficient)
                    ++out.rrc_low_emission_users;
            }

            // Decision trace for one representative handset.
            const std::size_t traced = static_cast<std::size_t>(c.tr_users > 0 ? n_am : 0);
            std::vector<mode::SlotObservation> history(
                static_cast<std::size_t>(c.power.n_slots));
            for (auto& obs : history) {
                obs.ss_dbm = draws[traced].ss_dbm;
                obs.snr = mixed_cell[traced].radiated_w * draws[traced].gain /
                          c.channel.noise_var_w;
                obs.sinr = obs.snr;
            }
            const auto trace = mode::adaptive_switch(history, std::span<const AppId>(demand),
                                                     c.power.a3_rate_bps, c.decision);
            out.decision_trace = mode::decision_trace_csv(trace);

            // Frame feasibility at this iteration's allocations.
            power::FramePlan plan;
            plan.n_slots = c.power.n_slots;
            plan.n_users = c.n_users;
            plan.p_max_w = c.power.p_max_w;
            plan.p_avg_w = c.power.p_avg_w;
            plan.allocations_w.resize(static_cast<std::size_t>(plan.n_slots) * plan.n_users);
            for (int slot = 0; slot < plan.n_slots; ++slot)
                for (int j = 0; j < c.n_users; ++j)
                    plan.at(slot, j) = mixed_cell[static_cast<std::size_t>(j)].radiated_w;
            out.frame_report = power::check_frame(plan);
        }
    }

    const auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v)
            s += x;
        return v.empty() ? 0.0 : s / static_cast<double>(v.size());
    };
    for (CellMetrics* cell : {&out.am, &out.mixed}) {
        cell->mean_total_power_w = mean(cell->total_power_w);
        cell->mean_ee_bits_per_joule = mean(cell->ee_bits_per_joule);
        cell->mean_complexity = mean(cell->complexity);
    }
    const auto total_users = static_cast<double>(c.iterations) * std::max(1, c.n_users);
    out.mean_user_pd_am_w_m2 = pd_sum_am / total_users;
    out.mean_user_pd_tr_w_m2 =
        pd_count_tr > 0 ? pd_sum_tr / static_cast<double>(pd_count_tr) : out.mean_user_pd_am_w_m2;
    out.mean_harvested_w =
        pd_count_tr > 0 ? harvested_sum_w / static_cast<double>(pd_count_tr) : 0.0;
    return out;
}

std::vector<exposure::TissueLayer> skin_from_config(const cfg::ExposureConfig& e) {
    auto layers = exposure::default_skin_layers();
    layers[0].thickness_mm = e.epidermis_thickness_mm;
    layers[0].density_kg_m3 = e.epidermis_density_kg_m3;
    layers[1].thickness_mm = e.sat_thickness_mm;
    layers[1].density_kg_m3 = e.sat_density_kg_m3;
    layers[2].thickness_mm = e.muscle_thickness_mm;
    layers[2].density_kg_m3 = e.muscle_density_kg_m3;
    if (!e.dielectric_dir.empty()) {
        layers[0].dielectric = exposure::load_dielectric_params(e.dielectric_dir + "/skin.params");
        layers[1].dielectric = exposure::load_dielectric_params(e.dielectric_dir + "/sat.params");
        layers[2].dielectric =
            exposure::load_dielectric_params(e.dielectric_dir + "/muscle.params");
    }
    return layers;
}

// Thin slab spanning the layer stack in z; the depth-resolved SAR drives the
// heating comparison between the two cells.
TemperatureSummaryRow solve_slab(const cfg::ScenarioConfig& c,
                                 const exposure::ExposureProfile& profile,
                                 const std::vector<exposure::TissueLayer>& skin,
                                 std::string label) {
    const auto& bh = c.bioheat;
    const double depth_mm = profile.depth_mm.back();
    const int nz = std::max(2, static_cast<int>(std::llround(depth_mm * 1e-3 / bh.spacing_m)));

    bioheat::TissueGrid grid = bioheat::TissueGrid::uniform(
        2, 2, nz, bh.spacing_m, bh.density_kg_m3, bh.heat_capacity_j_kg_k, bh.conductivity_w_m_k,
        bh.perfusion_w_m3_k);

    // Per-cell density from the layer stack and SAR from the depth profile.
    double boundary = 0.0;
    std::vector<double> layer_exit;
    for (const auto& layer : skin) {
        boundary += layer.thickness_mm;
        layer_exit.push_back(boundary);
    }
    for (int z = 0; z < nz; ++z) {
        const double z_mm = (z + 0.5) * bh.spacing_m * 1e3;
        std::size_t layer_idx = 0;
        while (layer_idx + 1 < layer_exit.size() && z_mm >= layer_exit[layer_idx])
            ++layer_idx;
        std::size_t grid_point = 0;
        while (grid_point + 1 < profile.depth_mm.size() &&
               profile.depth_mm[grid_point + 1] <= z_mm)
            ++grid_point;
        for (int y = 0; y < 2; ++y)
            for (int x = 0; x < 2; ++x) {
                const std::size_t i = grid.index(x, y, z);
                grid.density_kg_m3[i] = skin[layer_idx].density_kg_m3;
                grid.sar_w_kg[i] =
                    profile.sar_w_kg.empty() ? 0.0 : profile.sar_w_kg[grid_point];
            }
    }

    bioheat::SolverConfig solver;
    solver.boundary_h_w_m2_k = bh.boundary_h_w_m2_k;
    solver.ambient_temp_k = bh.ambient_temp_k;
    solver.blood_temp_k = bh.blood_temp_k;
    const double limit = bioheat::stability_limit(grid);
    solver.dt_s = bh.dt_s > 0.0 ? bh.dt_s : 0.9 * limit;
    const auto steps = std::max<std::int64_t>(1, std::llround(bh.total_time_s / solver.dt_s));
    solver.total_time_s = static_cast<double>(steps) * solver.dt_s;

    const auto field = bioheat::solve(grid, solver);
    TemperatureSummaryRow row;
    row.cell = std::move(label);
    row.peak_elevation_k = bioheat::peak_elevation(field);
    row.mean_elevation_k = bioheat::mean_elevation(field);
    row.steps = steps;
    row.dt_s = solver.dt_s;
    row.warm_sensation = bioheat::warm_sensation(field);
    return row;
}

} // namespace

bool ConstraintReport::all_satisfied() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const ConstraintRow& r) { return r.satisfied; });
}

ConstraintReport check_constraints(const CellMetrics& am, const CellMetrics& mixed) {
    if (am.aggregate_sar_w_kg.size() != mixed.aggregate_sar_w_kg.size())
        throw std::invalid_argument("check_constraints: iteration counts differ");
    if (am.draw_hash != mixed.draw_hash)
        throw std::invalid_argument("check_constraints: cells consumed different channel draws");

    ConstraintReport report;
    const auto build = [&](const std::string& name, const std::vector<double>& am_series,
                           const std::vector<double>& mixed_series) {
        ConstraintRow row;
        row.name = name;
        row.iterations_total = static_cast<int>(am_series.size());
        row.min_margin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < am_series.size(); ++i) {
            row.all_am_total += am_series[i];
            row.mixed_total += mixed_series[i];
            const double margin = am_series[i] - mixed_series[i];
            row.min_margin = std::min(row.min_margin, margin);
            if (mixed_series[i] < am_series[i])
                ++row.iterations_satisfied;
        }
        row.satisfied = row.iterations_satisfied == row.iterations_total;
        report.rows.push_back(std::move(row));
    };
    build("aggregate_sar", am.aggregate_sar_w_kg, mixed.aggregate_sar_w_kg);
    build("aggregate_pd", am.aggregate_pd_w_m2, mixed.aggregate_pd_w_m2);
    return report;
}

RunResults run_scenario(const cfg::ScenarioConfig& config) {
    SimOutput sim = simulate(config, true);

    RunResults results;
    results.config = config;
    results.am_cell = std::move(sim.am);
    results.mixed_cell = std::move(sim.mixed);
    results.power_saved_w = std::move(sim.power_saved_w);
    results.ee_series = std::move(sim.ee);
    results.complexity_series = std::move(sim.cx);
    results.decision_trace_csv = std::move(sim.decision_trace);
    results.constraints = check_constraints(results.am_cell, results.mixed_cell);

    // Exposure coupling: mean per-user radiated power -> incident power
    // density -> depth-resolved PD and SAR -> slab heating.
    const auto skin = skin_from_config(config.exposure);
    const double am_incident_mw_cm2 = sim.mean_user_pd_am_w_m2 / 10.0;
    const double tr_incident_mw_cm2 = sim.mean_user_pd_tr_w_m2 / 10.0;
    results.am_profile = exposure::sar_depth_profile(
        exposure::pd_depth_profile(skin, am_incident_mw_cm2, config.channel.frequency_hz,
                                   config.exposure.profile_depth_mm,
                                   config.exposure.profile_step_mm, "am"),
        skin);
    results.tr_profile = exposure::sar_depth_profile(
        exposure::pd_depth_profile(skin, tr_incident_mw_cm2, config.channel.frequency_hz,
                                   config.exposure.profile_depth_mm,
                                   config.exposure.profile_step_mm, "tr"),
        skin);

    results.temperature.push_back(solve_slab(config, results.am_profile, skin, "am"));
    results.temperature.push_back(solve_slab(config, results.tr_profile, skin, "tr"));

    results.rrc_low_emission_users = sim.rrc_low_emission_users;
    results.frame_check_ok = sim.frame_report.passed();
    results.mean_harvested_w = sim.mean_harvested_w;
    return results;
}

std::map<std::string, std::string> render_outputs(const RunResults& results) {
    std::map<std::string, std::string> files;
    const auto num = [](double v) { return csv::format_double(v); };

    {
        std::ostringstream out;
        out << "iteration,cell,total_power_w,power_saved_w,aggregate_sar_w_kg,aggregate_pd_w_m2,"
               "ee_bits_per_joule,complexity,mean_sinr\n";
        const auto emit_cell = [&](const CellMetrics& cell, bool mixed) {
            for (std::size_t i = 0; i < cell.total_power_w.size(); ++i) {
                out << i << ',' << cell.label << ',' << num(cell.total_power_w[i]) << ','
                    << num(mixed ? results.power_saved_w[i] : 0.0) << ','
                    << num(cell.aggregate_sar_w_kg[i]) << ',' << num(cell.aggregate_pd_w_m2[i])
                    << ',' << num(cell.ee_bits_per_joule[i]) << ',' << num(cell.complexity[i])
                    << ',' << num(cell.mean_sinr[i]) << '\n';
            }
        };
        emit_cell(results.am_cell, false);
        emit_cell(results.mixed_cell, true);
        files["cell_metrics.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "iteration,active_users,cell,app,ee_bits_per_joule\n";
        for (const EeSeriesRow& row : results.ee_series)
            out << row.iteration << ',' << row.active_users << ',' << row.cell << ','
                << to_string(row.app) << ',' << num(row.ee_bits_per_joule) << '\n';
        files["ee_series.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "iteration,cell,links_per_slot,links_per_iteration\n";
        for (const ComplexitySeriesRow& row : results.complexity_series)
            out << row.iteration << ',' << row.cell << ',' << num(row.links_per_slot) << ','
                << num(row.links_per_iteration) << '\n';
        files["complexity_series.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "depth_mm,am_pd_mw_cm2,tr_pd_mw_cm2\n";
        for (std::size_t i = 0; i < results.am_profile.depth_mm.size(); ++i)
            out << num(results.am_profile.depth_mm[i]) << ','
                << num(results.am_profile.pd_mw_cm2[i]) << ','
                << num(results.tr_profile.pd_mw_cm2[i]) << '\n';
        files["pd_profile.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "depth_mm,am_sar_w_kg,tr_sar_w_kg\n";
        for (std::size_t i = 0; i < results.am_profile.depth_mm.size(); ++i)
            out << num(results.am_profile.depth_mm[i]) << ','
                << num(results.am_profile.sar_w_kg[i]) << ','
                << num(results.tr_profile.sar_w_kg[i]) << '\n';
        files["sar_profile.csv"] = out.str();
    }
    {
        const auto ref = datasets::load_pd_reference();
        files["table4_report.csv"] = csv::to_string(ref.raw);
        const auto report = exposure::comparative_report(ref.profiles, 0.4);
        std::ostringstream out;
        out << "versus,other_pd_mw_cm2,tr_pd_mw_cm2,percent_reduction\n";
        for (const auto& row : report.reductions)
            out << row.versus << ',' << num(row.other_pd_mw_cm2) << ',' << num(row.tr_pd_mw_cm2)
                << ',' << num(row.percent_reduction) << '\n';
        files["table4_reductions.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "cell,peak_elevation_k,mean_elevation_k,steps,dt_s,warm_sensation\n";
        for (const TemperatureSummaryRow& row : results.temperature)
            out << row.cell << ',' << num(row.peak_elevation_k) << ','
                << num(row.mean_elevation_k) << ',' << row.steps << ',' << num(row.dt_s) << ','
                << (row.warm_sensation ? "true" : "false") << '\n';
        files["temperature_summary.csv"] = out.str();
    }
    {
        // Plot-ready template pattern scaled by the steady peaks.
        double peak_am = 0.0, peak_tr = 0.0;
        for (const auto& row : results.temperature) {
            if (row.cell == "am")
                peak_am = row.peak_elevation_k;
            if (row.cell == "tr")
                peak_tr = row.peak_elevation_k;
        }
        std::ostringstream out;
        out << "azimuth_deg,elevation_deg,am_peak_k,tr_peak_k\n";
        for (int el = -90; el <= 90; el += 10)
            for (int az = 0; az < 360; az += 10) {
                const double elr = el * std::numbers::pi / 180.0;
                const double azr = az * std::numbers::pi / 180.0;
                const double g = std::cos(elr) * std::cos(elr) * (0.6 + 0.4 * std::cos(azr));
                out << az << ',' << el << ',' << num(peak_am * g) << ',' << num(peak_tr * g)
                    << '\n';
            }
        files["radiation_pattern.csv"] = out.str();
    }
    files["decision_trace.csv"] = results.decision_trace_csv;
    {
        std::ostringstream out;
        out << "constraint,all_am_total,mixed_total,min_margin,iterations_satisfied,"
               "iterations_total,satisfied\n";
        for (const ConstraintRow& row : results.constraints.rows)
            out << row.name << ',' << num(row.all_am_total) << ',' << num(row.mixed_total) << ','
                << num(row.min_margin) << ',' << row.iterations_satisfied << ','
                << row.iterations_total << ',' << (row.satisfied ? "true" : "false") << '\n';
        files["constraints.csv"] = out.str();
    }
    {
        std::ostringstream out;
        out << "trsim run manifest\n";
        out << "version = " << kVersion << "\n";
        out << "seed = " << results.config.seed << "\n";
        out << "iterations = " << results.config.iterations << "\n";
        out << "n_users = " << results.config.n_users << "\n";
        out << "tr_users = " << results.config.tr_users << "\n";
        char hash_buf[32];
        std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                      static_cast<unsigned long long>(results.am_cell.draw_hash));
        out << "draw_hash_all_am = " << hash_buf << "\n";
        std::snprintf(hash_buf, sizeof(hash_buf), "%016llx",
                      static_cast<unsigned long long>(results.mixed_cell.draw_hash));
        out << "draw_hash_mixed = " << hash_buf << "\n";
        out << "mean_power_all_am_w = " << csv::format_double(results.am_cell.mean_total_power_w)
            << "\n";
        out << "mean_power_mixed_w = " << csv::format_double(results.mixed_cell.mean_total_power_w)
            << "\n";
        out << "rrc_low_emission_users = " << results.rrc_low_emission_users << "\n";
        out << "frame_check = " << (results.frame_check_ok ? "pass" : "fail") << "\n";
        out << "mean_harvested_per_low_emission_user_w = "
            << csv::format_double(results.mean_harvested_w) << "\n";
        out << "constraints_satisfied = "
            << (results.constraints.all_satisfied() ? "true" : "false") << "\n";
        out << "\n[config]\n" << results.config.to_text();
        files["run_manifest.txt"] = out.str();
    }
    return files;
}

std::map<std::string, std::string> emit_outputs(const RunResults& results,
                                                const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("emit_outputs: cannot create '" + out_dir + "': " + ec.message());
    auto files = render_outputs(results);
    for (const auto& [name, contents] : files)
        csv::write_file(out_dir + "/" + name, contents);
    return files;
}

std::vector<EeSeriesRow> ee_series(const cfg::ScenarioConfig& config) {
    return simulate(config, true).ee;
}

std::vector<ComplexitySeriesRow> complexity_series(const cfg::ScenarioConfig& config) {
    return simulate(config, true).cx;
}

} // namespace trsim::scenario
