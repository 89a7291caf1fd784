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

#include "trsim/config.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "trsim/csv.hpp"

namespace trsim::cfg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// key = value lines under [section] headers; '#' starts a comment.
class KeyValueFile {
  public:
    explicit KeyValueFile(const std::string& text) {
        std::istringstream lines(text);
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(lines, line)) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            line = trim(line);
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ConfigError("config line " + std::to_string(line_no) +
                                      ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected key = value");
            const std::string key = section + "." + trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (!entries_.emplace(key, value).second)
                throw ConfigError("config [" + key + "]: duplicate key");
        }
    }

    double number(const std::string& key, double fallback) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return fallback;
        consumed_.insert(key);
        try {
            return csv::to_double(it->second);
        } catch (const std::exception&) {
            throw ConfigError("config [" + key + "]: not a number: '" + it->second + "'");
        }
    }

    int integer(const std::string& key, int fallback) {
        const double v = number(key, static_cast<double>(fallback));
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw ConfigError("config [" + key + "]: expected an integer");
        return i;
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return fallback;
        consumed_.insert(key);
        std::uint64_t v = 0;
        const char* begin = it->second.data();
        const char* end = begin + it->second.size();
        const auto res = std::from_chars(begin, end, v);
        if (res.ec != std::errc{} || res.ptr != end)
            throw ConfigError("config [" + key + "]: expected an unsigned integer");
        return v;
    }

    bool boolean(const std::string& key, bool fallback) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return fallback;
        consumed_.insert(key);
        if (it->second == "true")
            return true;
        if (it->second == "false")
            return false;
        throw ConfigError("config [" + key + "]: expected true or false");
    }

    std::string text(const std::string& key, std::string fallback) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return fallback;
        consumed_.insert(key);
        return it->second;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : entries_)
            if (!consumed_.count(key))
                throw ConfigError("config [" + key + "]: unknown key");
    }

  private:
    std::map<std::string, std::string> entries_;
    std::set<std::string> consumed_;
};

void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok)
        throw ConfigError("config [" + field + "]: " + what);
}

} // namespace

void ScenarioConfig::validate() const {
    require(n_users >= 0, "scenario.n_users", "must be >= 0");
    require(tr_users >= 0, "scenario.tr_users", "must be >= 0");
    require(tr_users <= n_users, "scenario.tr_users", "must be <= n_users");
    require(iterations >= 1, "scenario.iterations", "must be >= 1");
    try {
        mode::profile_by_name(operator_profile);
    } catch (const std::exception&) {
        require(false, "scenario.operator_profile", "unknown profile '" + operator_profile + "'");
    }

    require(channel.frequency_hz > 0, "channel.frequency_hz", "must be > 0");
    require(channel.bandwidth_hz > 0, "channel.bandwidth_hz", "must be > 0");
    require(channel.noise_var_w > 0, "channel.noise_var_w", "must be > 0");
    require(channel.n_taps >= 1, "channel.n_taps", "must be >= 1");
    require(channel.delay_spread_s >= 0, "channel.delay_spread_s", "must be >= 0");
    require(channel.t_bs_w >= 0, "channel.t_bs_w", "must be >= 0");
    require(channel.p_j_w >= 0, "channel.p_j_w", "must be >= 0");
    require(channel.interference_coupling >= 0, "channel.interference_coupling", "must be >= 0");

    require(power.a1_rate_bps >= 0, "power.a1_rate_bps", "must be >= 0");
    require(power.a2_rate_bps >= power.a1_rate_bps, "power.a2_rate_bps",
            "application rates must be ordered a1 <= a2 <= a3");
    require(power.a3_rate_bps >= power.a2_rate_bps, "power.a3_rate_bps",
            "application rates must be ordered a1 <= a2 <= a3");
    require(power.p_ckt_w > 0, "power.p_ckt_w", "must be > 0");
    require(power.n_slots >= 1, "power.n_slots", "must be >= 1");
    require(power.p_max_w > 0, "power.p_max_w", "must be > 0");
    require(power.p_avg_w > 0, "power.p_avg_w", "must be > 0");
    require(power.alpha >= 0 && power.alpha <= 1, "power.alpha", "must lie in [0, 1]");
    require(power.gamma > 0 && power.gamma <= 1, "power.gamma", "must lie in (0, 1]");

    require(zones.am_band_low_dbm <= zones.am_band_high_dbm, "mode.am_band_low_dbm",
            "band must be ordered low <= high");
    require(zones.tr_band_low_dbm <= zones.tr_band_high_dbm, "mode.tr_band_low_dbm",
            "band must be ordered low <= high");
    require(zones.am_band_low_dbm >= decision.ss_threshold_dbm, "mode.am_band_low_dbm",
            "active-zone band must sit at or above the threshold");
    require(zones.tr_band_high_dbm < decision.ss_threshold_dbm, "mode.tr_band_high_dbm",
            "low-signal-zone band must sit below the threshold");
    require(decision.window_slots >= 1, "mode.window_slots", "must be >= 1");
    require(decision.hysteresis_db >= 0, "mode.hysteresis_db", "must be >= 0");

    require(exposure.reference_distance_m > 0, "exposure.reference_distance_m", "must be > 0");
    require(exposure.antenna_gain >= 0, "exposure.antenna_gain", "must be >= 0");
    require(exposure.tissue_mass_kg > 0, "exposure.tissue_mass_kg", "must be > 0");
    require(exposure.incident_pd_am_mw_cm2 >= 0, "exposure.incident_pd_am_mw_cm2", "must be >= 0");
    require(exposure.incident_pd_tr_mw_cm2 >= 0, "exposure.incident_pd_tr_mw_cm2", "must be >= 0");
    require(exposure.profile_step_mm > 0, "exposure.profile_step_mm", "must be > 0");
    require(exposure.profile_depth_mm >= 0, "exposure.profile_depth_mm", "must be >= 0");
    require(exposure.epidermis_thickness_mm > 0, "exposure.epidermis_thickness_mm", "must be > 0");
    require(exposure.sat_thickness_mm > 0, "exposure.sat_thickness_mm", "must be > 0");
    require(exposure.muscle_thickness_mm > 0, "exposure.muscle_thickness_mm", "must be > 0");
    require(exposure.epidermis_density_kg_m3 > 0, "exposure.epidermis_density_kg_m3",
            "must be > 0");
    require(exposure.sat_density_kg_m3 > 0, "exposure.sat_density_kg_m3", "must be > 0");
    require(exposure.muscle_density_kg_m3 > 0, "exposure.muscle_density_kg_m3", "must be > 0");

    require(bioheat.grid_nx >= 2 && bioheat.grid_ny >= 2 && bioheat.grid_nz >= 2,
            "bioheat.grid_nx", "grid needs at least 2 cells per axis");
    require(bioheat.spacing_m > 0, "bioheat.spacing_m", "must be > 0");
    require(bioheat.density_kg_m3 > 0, "bioheat.density_kg_m3", "must be > 0");
    require(bioheat.heat_capacity_j_kg_k > 0, "bioheat.heat_capacity_j_kg_k", "must be > 0");
    require(bioheat.conductivity_w_m_k > 0, "bioheat.conductivity_w_m_k", "must be > 0");
    require(bioheat.perfusion_w_m3_k >= 0, "bioheat.perfusion_w_m3_k", "must be >= 0");
    require(bioheat.boundary_h_w_m2_k >= 0, "bioheat.boundary_h_w_m2_k", "must be >= 0");
    require(bioheat.dt_s >= 0, "bioheat.dt_s", "must be >= 0 (0 picks 0.9 x the limit)");
    require(bioheat.total_time_s > 0, "bioheat.total_time_s", "must be > 0");
    require(bioheat.mass_kg > 0, "bioheat.mass_kg", "must be > 0");
    require(bioheat.power_am_w >= 0, "bioheat.power_am_w", "must be >= 0");
    require(bioheat.power_tr_w >= 0, "bioheat.power_tr_w", "must be >= 0");
}

ScenarioConfig ScenarioConfig::from_text(const std::string& text) {
    KeyValueFile kv(text);
    ScenarioConfig c;

    c.n_users = kv.integer("scenario.n_users", c.n_users);
    c.tr_users = kv.integer("scenario.tr_users", c.tr_users);
    c.iterations = kv.integer("scenario.iterations", c.iterations);
    c.seed = kv.unsigned64("scenario.seed", c.seed);
    c.operator_profile = kv.text("scenario.operator_profile", c.operator_profile);

    auto& ch = c.channel;
    ch.frequency_hz = kv.number("channel.frequency_hz", ch.frequency_hz);
    ch.bandwidth_hz = kv.number("channel.bandwidth_hz", ch.bandwidth_hz);
    ch.noise_var_w = kv.number("channel.noise_var_w", ch.noise_var_w);
    ch.n_taps = kv.integer("channel.n_taps", ch.n_taps);
    ch.delay_spread_s = kv.number("channel.delay_spread_s", ch.delay_spread_s);
    ch.tx_ref_dbm = kv.number("channel.tx_ref_dbm", ch.tx_ref_dbm);
    ch.t_bs_w = kv.number("channel.t_bs_w", ch.t_bs_w);
    ch.p_j_w = kv.number("channel.p_j_w", ch.p_j_w);
    ch.interference_coupling = kv.number("channel.interference_coupling", ch.interference_coupling);

    auto& pw = c.power;
    pw.a1_rate_bps = kv.number("power.a1_rate_bps", pw.a1_rate_bps);
    pw.a2_rate_bps = kv.number("power.a2_rate_bps", pw.a2_rate_bps);
    pw.a3_rate_bps = kv.number("power.a3_rate_bps", pw.a3_rate_bps);
    pw.p_ckt_w = kv.number("power.p_ckt_w", pw.p_ckt_w);
    pw.n_slots = kv.integer("power.n_slots", pw.n_slots);
    pw.p_max_w = kv.number("power.p_max_w", pw.p_max_w);
    pw.p_avg_w = kv.number("power.p_avg_w", pw.p_avg_w);
    pw.alpha = kv.number("power.alpha", pw.alpha);
    pw.gamma = kv.number("power.gamma", pw.gamma);

    auto& dc = c.decision;
    dc.ss_threshold_dbm = kv.number("mode.ss_threshold_dbm", dc.ss_threshold_dbm);
    dc.served_band_low_dbm = kv.number("mode.served_band_low_dbm", dc.served_band_low_dbm);
    dc.served_band_high_dbm = kv.number("mode.served_band_high_dbm", dc.served_band_high_dbm);
    dc.hysteresis_db = kv.number("mode.hysteresis_db", dc.hysteresis_db);
    dc.a3_downlink_in_tr = kv.boolean("mode.a3_downlink_in_tr", dc.a3_downlink_in_tr);
    dc.window_slots = kv.integer("mode.window_slots", dc.window_slots);

    auto& z = c.zones;
    z.am_band_low_dbm = kv.number("mode.am_band_low_dbm", z.am_band_low_dbm);
    z.am_band_high_dbm = kv.number("mode.am_band_high_dbm", z.am_band_high_dbm);
    z.tr_band_low_dbm = kv.number("mode.tr_band_low_dbm", z.tr_band_low_dbm);
    z.tr_band_high_dbm = kv.number("mode.tr_band_high_dbm", z.tr_band_high_dbm);

    auto& ex = c.exposure;
    ex.reference_distance_m = kv.number("exposure.reference_distance_m", ex.reference_distance_m);
    ex.antenna_gain = kv.number("exposure.antenna_gain", ex.antenna_gain);
    ex.tissue_mass_kg = kv.number("exposure.tissue_mass_kg", ex.tissue_mass_kg);
    const std::string sar_am = kv.text("exposure.sar_am_power", "uplink");
    if (sar_am == "uplink")
        ex.sar_am_power = SarAmPower::UplinkPortion;
    else if (sar_am == "total")
        ex.sar_am_power = SarAmPower::Total;
    else
        throw ConfigError("config [exposure.sar_am_power]: expected 'uplink' or 'total'");
    ex.incident_pd_am_mw_cm2 = kv.number("exposure.incident_pd_am_mw_cm2", ex.incident_pd_am_mw_cm2);
    ex.incident_pd_tr_mw_cm2 = kv.number("exposure.incident_pd_tr_mw_cm2", ex.incident_pd_tr_mw_cm2);
    ex.profile_step_mm = kv.number("exposure.profile_step_mm", ex.profile_step_mm);
    ex.profile_depth_mm = kv.number("exposure.profile_depth_mm", ex.profile_depth_mm);
    ex.epidermis_thickness_mm = kv.number("exposure.epidermis_thickness_mm", ex.epidermis_thickness_mm);
    ex.sat_thickness_mm = kv.number("exposure.sat_thickness_mm", ex.sat_thickness_mm);
    ex.muscle_thickness_mm = kv.number("exposure.muscle_thickness_mm", ex.muscle_thickness_mm);
    ex.epidermis_density_kg_m3 = kv.number("exposure.epidermis_density_kg_m3", ex.epidermis_density_kg_m3);
    ex.sat_density_kg_m3 = kv.number("exposure.sat_density_kg_m3", ex.sat_density_kg_m3);
    ex.muscle_density_kg_m3 = kv.number("exposure.muscle_density_kg_m3", ex.muscle_density_kg_m3);
    ex.dielectric_dir = kv.text("exposure.dielectric_dir", ex.dielectric_dir);

    auto& bh = c.bioheat;
    bh.grid_nx = kv.integer("bioheat.grid_nx", bh.grid_nx);
    bh.grid_ny = kv.integer("bioheat.grid_ny", bh.grid_ny);
    bh.grid_nz = kv.integer("bioheat.grid_nz", bh.grid_nz);
    bh.spacing_m = kv.number("bioheat.spacing_m", bh.spacing_m);
    bh.density_kg_m3 = kv.number("bioheat.density_kg_m3", bh.density_kg_m3);
    bh.heat_capacity_j_kg_k = kv.number("bioheat.heat_capacity_j_kg_k", bh.heat_capacity_j_kg_k);
    bh.conductivity_w_m_k = kv.number("bioheat.conductivity_w_m_k", bh.conductivity_w_m_k);
    bh.perfusion_w_m3_k = kv.number("bioheat.perfusion_w_m3_k", bh.perfusion_w_m3_k);
    bh.boundary_h_w_m2_k = kv.number("bioheat.boundary_h_w_m2_k", bh.boundary_h_w_m2_k);
    bh.ambient_temp_k = kv.number("bioheat.ambient_temp_k", bh.ambient_temp_k);
    bh.blood_temp_k = kv.number("bioheat.blood_temp_k", bh.blood_temp_k);
    bh.dt_s = kv.number("bioheat.dt_s", bh.dt_s);
    bh.total_time_s = kv.number("bioheat.total_time_s", bh.total_time_s);
    bh.mass_kg = kv.number("bioheat.mass_kg", bh.mass_kg);
    bh.power_am_w = kv.number("bioheat.power_am_w", bh.power_am_w);
    bh.power_tr_w = kv.number("bioheat.power_tr_w", bh.power_tr_w);

    kv.reject_unknown();
    c.validate();
    return c;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    try {
        return from_text(csv::read_text_file(path));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

std::string ScenarioConfig::to_text() const {
    std::ostringstream out;
    const auto num = [](double v) { return csv::format_double(v); };
    out << "[scenario]\n"
        << "n_users = " << n_users << "\n"
        << "tr_users = " << tr_users << "\n"
        << "iterations = " << iterations << "\n"
        << "seed = " << seed << "\n"
        << "operator_profile = " << operator_profile << "\n\n";
    out << "[channel]\n"
        << "frequency_hz = " << num(channel.frequency_hz) << "\n"
        << "bandwidth_hz = " << num(channel.bandwidth_hz) << "\n"
        << "noise_var_w = " << num(channel.noise_var_w) << "\n"
        << "n_taps = " << channel.n_taps << "\n"
        << "delay_spread_s = " << num(channel.delay_spread_s) << "\n"
        << "tx_ref_dbm = " << num(channel.tx_ref_dbm) << "\n"
        << "t_bs_w = " << num(channel.t_bs_w) << "\n"
        << "p_j_w = " << num(channel.p_j_w) << "\n"
        << "interference_coupling = " << num(channel.interference_coupling) << "\n\n";
    out << "[power]\n"
        << "a1_rate_bps = " << num(power.a1_rate_bps) << "\n"
        << "a2_rate_bps = " << num(power.a2_rate_bps) << "\n"
        << "a3_rate_bps = " << num(power.a3_rate_bps) << "\n"
        << "p_ckt_w = " << num(power.p_ckt_w) << "\n"
        << "n_slots = " << power.n_slots << "\n"
        << "p_max_w = " << num(power.p_max_w) << "\n"
        << "p_avg_w = " << num(power.p_avg_w) << "\n"
        << "alpha = " << num(power.alpha) << "\n"
        << "gamma = " << num(power.gamma) << "\n\n";
    out << "[mode]\n"
        << "ss_threshold_dbm = " << num(decision.ss_threshold_dbm) << "\n"
        << "served_band_low_dbm = " << num(decision.served_band_low_dbm) << "\n"
        << "served_band_high_dbm = " << num(decision.served_band_high_dbm) << "\n"
        << "hysteresis_db = " << num(decision.hysteresis_db) << "\n"
        << "a3_downlink_in_tr = " << (decision.a3_downlink_in_tr ? "true" : "false") << "\n"
        << "window_slots = " << decision.window_slots << "\n"
        << "am_band_low_dbm = " << num(zones.am_band_low_dbm) << "\n"
        << "am_band_high_dbm = " << num(zones.am_band_high_dbm) << "\n"
        << "tr_band_low_dbm = " << num(zones.tr_band_low_dbm) << "\n"
        << "tr_band_high_dbm = " << num(zones.tr_band_high_dbm) << "\n\n";
    out << "[exposure]\n"
        << "reference_distance_m = " << num(exposure.reference_distance_m) << "\n"
        << "antenna_gain = " << num(exposure.antenna_gain) << "\n"
        << "tissue_mass_kg = " << num(exposure.tissue_mass_kg) << "\n"
        << "sar_am_power = "
        << (exposure.sar_am_power == SarAmPower::UplinkPortion ? "uplink" : "total") << "\n"
        << "incident_pd_am_mw_cm2 = " << num(exposure.incident_pd_am_mw_cm2) << "\n"
        << "incident_pd_tr_mw_cm2 = " << num(exposure.incident_pd_tr_mw_cm2) << "\n"
        << "profile_step_mm = " << num(exposure.profile_step_mm) << "\n"
        << "profile_depth_mm = " << num(exposure.profile_depth_mm) << "\n"
        << "epidermis_thickness_mm = " << num(exposure.epidermis_thickness_mm) << "\n"
        << "sat_thickness_mm = " << num(exposure.sat_thickness_mm) << "\n"
        << "muscle_thickness_mm = " << num(exposure.muscle_thickness_mm) << "\n"
        << "epidermis_density_kg_m3 = " << num(exposure.epidermis_density_kg_m3) << "\n"
        << "sat_density_kg_m3 = " << num(exposure.sat_density_kg_m3) << "\n"
        << "muscle_density_kg_m3 = " << num(exposure.muscle_density_kg_m3) << "\n";
    if (!exposure.dielectric_dir.empty())
        out << "dielectric_dir = " << exposure.dielectric_dir << "\n";
    out << "\n[bioheat]\n"
        << "grid_nx = " << bioheat.grid_nx << "\n"
        << "grid_ny = " << bioheat.grid_ny << "\n"
        << "grid_nz = " << bioheat.grid_nz << "\n"
        << "spacing_m = " << num(bioheat.spacing_m) << "\n"
        << "density_kg_m3 = " << num(bioheat.density_kg_m3) << "\n"
        << "heat_capacity_j_kg_k = " << num(bioheat.heat_capacity_j_kg_k) << "\n"
        << "conductivity_w_m_k = " << num(bioheat.conductivity_w_m_k) << "\n"
        << "perfusion_w_m3_k = " << num(bioheat.perfusion_w_m3_k) << "\n"
        << "boundary_h_w_m2_k = " << num(bioheat.boundary_h_w_m2_k) << "\n"
        << "ambient_temp_k = " << num(bioheat.ambient_temp_k) << "\n"
        << "blood_temp_k = " << num(bioheat.blood_temp_k) << "\n"
        << "dt_s = " << num(bioheat.dt_s) << "\n"
        << "total_time_s = " << num(bioheat.total_time_s) << "\n"
        << "mass_kg = " << num(bioheat.mass_kg) << "\n"
        << "power_am_w = " << num(bioheat.power_am_w) << "\n"
        << "power_tr_w = " << num(bioheat.power_tr_w) << "\n";
    return out.str();
}

} // namespace trsim::cfg
