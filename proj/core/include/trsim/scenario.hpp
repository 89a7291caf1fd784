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
#include <map>
#include <string>
#include <vector>

#include "trsim/config.hpp"
#include "trsim/exposure.hpp"

namespace trsim::scenario {

/// Per-cell accounting over the Monte Carlo run; one entry per iteration in
/// each series plus run-level summaries.
struct CellMetrics {
    std::string label;
    std::vector<double> total_power_w;
    std::vector<double> aggregate_sar_w_kg;
    std::vector<double> aggregate_pd_w_m2;
    std::vector<double> ee_bits_per_joule; // delivered rate / consumed power, per iteration
    std::vector<double> complexity;        // interference-link evaluations per iteration
    std::vector<double> mean_sinr;
    std::uint64_t draw_hash = 0;           // fingerprint of the channel draws consumed

    double mean_total_power_w = 0.0;
    double mean_ee_bits_per_joule = 0.0;
    double mean_complexity = 0.0;
};

struct ConstraintRow {
    std::string name;
    double all_am_total = 0.0;  // summed over iterations
    double mixed_total = 0.0;
    double min_margin = 0.0;    // smallest per-iteration (all_am - mixed)
    int iterations_satisfied = 0;
    int iterations_total = 0;
    bool satisfied = false;     // strict < in every iteration
};

struct ConstraintReport {
    std::vector<ConstraintRow> rows;

    bool all_satisfied() const;
};

struct EeSeriesRow {
    int iteration = 0;
    int active_users = 0;
    std::string cell;
    AppId app = AppId::A1Text;
    double ee_bits_per_joule = 0.0;
};

struct ComplexitySeriesRow {
    int iteration = 0;
    std::string cell;
    double links_per_slot = 0.0;
    double links_per_iteration = 0.0;
};

struct TemperatureSummaryRow {
    std::string cell;
    double peak_elevation_k = 0.0;
    double mean_elevation_k = 0.0;
    std::int64_t steps = 0;
    double dt_s = 0.0;
    bool warm_sensation = false;
};

struct RunResults {
    cfg::ScenarioConfig config;
    CellMetrics am_cell;
    CellMetrics mixed_cell;
    std::vector<double> power_saved_w; // per iteration, am - mixed
    ConstraintReport constraints;
    std::vector<EeSeriesRow> ee_series;
    std::vector<ComplexitySeriesRow> complexity_series;
    exposure::ExposureProfile am_profile; // pd + sar over depth
    exposure::ExposureProfile tr_profile;
    std::vector<TemperatureSummaryRow> temperature;
    std::string decision_trace_csv;    // first low-signal handset, first iteration
    int rrc_low_emission_users = 0;    // handsets ending in the downlink-only state
    bool frame_check_ok = false;       // slot/frame budget feasibility at iteration 0
    double mean_harvested_w = 0.0;     // per low-emission user, splitter accounting only
};

/// Runs the paired two-cell experiment: every iteration draws one set of
/// per-user channel states, feeds the identical draws to an all-Active cell
/// and to a mixed cell whose low-signal users drop to low-emission mode, and
/// accumulates power, exposure, efficiency and complexity accounting.
RunResults run_scenario(const cfg::ScenarioConfig& config);

/// Strict-dominance check of the mixed cell against the all-Active cell on
/// summed SAR and summed power density, evaluated per iteration.
ConstraintReport check_constraints(const CellMetrics& am, const CellMetrics& mixed);

/// Per-iteration, per-active-user-count energy efficiency per application.
std::vector<EeSeriesRow> ee_series(const cfg::ScenarioConfig& config);

/// Per-iteration interference-link counts.
std::vector<ComplexitySeriesRow> complexity_series(const cfg::ScenarioConfig& config);

/// Writes every output file into out_dir (created if missing) and returns
/// the emitted paths with their contents, keyed by file name.
std::map<std::string, std::string> emit_outputs(const RunResults& results,
                                                const std::string& out_dir);

/// Renders the same output set without touching the filesystem.
std::map<std::string, std::string> render_outputs(const RunResults& results);

} // namespace trsim::scenario
