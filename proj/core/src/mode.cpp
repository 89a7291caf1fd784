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

#include "trsim/mode.hpp"

#include <cmath>
#include <sstream>

#include "trsim/csv.hpp"

namespace trsim::mode {

void OperatorProfile::validate() const {
    const bool decreasing = great_dbm > good_dbm && good_dbm > average_dbm &&
                            average_dbm > poor_dbm && poor_dbm > very_poor_dbm;
    if (!decreasing)
        throw std::invalid_argument("operator profile '" + name +
                                    "': band edges must strictly decrease from great to very poor");
}

OperatorProfile jio_profile() { return {"jio", -75.0, -84.0, -96.0, -106.0, -110.0}; }
OperatorProfile bsnl_profile() { return {"bsnl", -70.0, -81.0, -91.0, -101.0, -105.0}; }
OperatorProfile airtel_profile() { return {"airtel", -77.0, -85.0, -93.0, -104.0, -114.0}; }

// Band-text profile: great/good spans -50..-89, average -90..-99, poor and
// very poor share -100..-120.
OperatorProfile generic_profile() { return {"generic", -50.0, -89.0, -99.0, -110.0, -120.0}; }

OperatorProfile profile_by_name(const std::string& name) {
    if (name == "jio")
        return jio_profile();
    if (name == "bsnl")
        return bsnl_profile();
    if (name == "airtel")
        return airtel_profile();
    if (name == "generic")
        return generic_profile();
    throw std::invalid_argument("unknown operator profile '" + name + "'");
}

std::vector<OperatorProfile> load_operator_profiles(const std::string& path) {
    const csv::Table table = csv::read_file(path);
    const std::vector<std::string> expected = {"operator",    "great_dbm", "good_dbm",
                                               "average_dbm", "poor_dbm",  "very_poor_dbm"};
    if (table.header != expected)
        throw std::runtime_error("operator profile csv '" + path + "': unexpected header");
    std::vector<OperatorProfile> profiles;
    for (const auto& row : table.rows) {
        OperatorProfile p;
        p.name = row.at(0);
        p.great_dbm = csv::to_double(row.at(1));
        p.good_dbm = csv::to_double(row.at(2));
        p.average_dbm = csv::to_double(row.at(3));
        p.poor_dbm = csv::to_double(row.at(4));
        p.very_poor_dbm = csv::to_double(row.at(5));
        p.validate();
        profiles.push_back(std::move(p));
    }
    return profiles;
}

SignalBand classify_signal(double ss_dbm, const OperatorProfile& profile) {
    profile.validate();
    if (ss_dbm >= profile.great_dbm)
        return SignalBand::Great;
    if (ss_dbm >= profile.good_dbm)
        return SignalBand::Good;
    if (ss_dbm >= profile.average_dbm)
        return SignalBand::Average;
    if (ss_dbm >= profile.poor_dbm)
        return SignalBand::Poor;
    return SignalBand::VeryPoor;
}

UeMode d2_decide(double ss_dbm, const DecisionConfig& config, UeMode current) {
    if (current == UeMode::Flight)
        throw std::invalid_argument("d2_decide: flight mode is user-set, not decided");
    if (!std::isfinite(ss_dbm))
        throw std::invalid_argument("d2_decide: signal strength must be finite");
    // Recovery from low-emission operation may demand a hysteresis margin.
    const double recover_at = config.ss_threshold_dbm +
                              (current == UeMode::ThermalRadiation ? config.hysteresis_db : 0.0);
    return ss_dbm < recover_at ? UeMode::ThermalRadiation : UeMode::Active;
}

std::vector<AppId> allowed_applications(UeMode mode) {
    switch (mode) {
    case UeMode::Active:
        return {AppId::A1Text, AppId::A2Voice, AppId::A3Video};
    case UeMode::ThermalRadiation:
        return {AppId::A1Text, AppId::A2Voice};
    case UeMode::Flight:
        return {};
    }
    return {};
}

bool serves(UeMode mode, AppId app) {
    if (mode == UeMode::Flight)
        return false;
    if (mode == UeMode::ThermalRadiation && app == AppId::A3Video)
        return false;
    return true;
}

std::vector<AppLink> active_links(UeMode mode, std::span<const AppId> demand,
                                  const DecisionConfig& config) {
    std::vector<AppLink> links;
    if (mode == UeMode::Flight)
        return links;
    for (AppId app : demand) {
        const bool high_bandwidth = app == AppId::A3Video;
        if (mode == UeMode::ThermalRadiation && high_bandwidth) {
            if (config.a3_downlink_in_tr)
                links.push_back({app, LinkDirection::Downlink});
            continue; // the uplink is suspended either way
        }
        links.push_back({app, LinkDirection::Downlink});
        links.push_back({app, LinkDirection::Uplink});
    }
    return links;
}

std::string_view to_string(RrcEvent e) {
    switch (e) {
    case RrcEvent::SetupRequest: return "setup_request";
    case RrcEvent::SetupComplete: return "setup_complete";
    case RrcEvent::ModeIdentifiedAm: return "mode_identified(am)";
    case RrcEvent::ModeIdentifiedTr: return "mode_identified(tr)";
    case RrcEvent::ModeIdentifiedFlight: return "mode_identified(flight)";
    case RrcEvent::SignalRecovered: return "signal_recovered";
    case RrcEvent::Release: return "release";
    case RrcEvent::UplinkTransfer: return "uplink_transfer";
    case RrcEvent::DownlinkTransfer: return "downlink_transfer";
    case RrcEvent::UplinkNasTransport: return "uplink_nas_transport";
    case RrcEvent::DownlinkNasTransport: return "downlink_nas_transport";
    }
    return "?";
}

ProtocolViolation::ProtocolViolation(RrcState state, RrcEvent event, std::string_view reason)
    : std::runtime_error("protocol violation: event '" + std::string(to_string(event)) +
                         "' in state '" + std::string(trsim::to_string(state)) + "': " +
                         std::string(reason)) {}

RrcState RrcMachine::transition(RrcEvent event) {
    switch (state_) {
    case RrcState::Idle:
        switch (event) {
        case RrcEvent::SetupRequest:
            setup_pending_ = true;
            return state_;
        case RrcEvent::SetupComplete:
            if (!setup_pending_)
                throw ProtocolViolation(state_, event, "no setup request pending");
            setup_pending_ = false;
            state_ = RrcState::Connected;
            return state_;
        case RrcEvent::Release:
            setup_pending_ = false;
            return state_;
        default:
            throw ProtocolViolation(state_, event, "connection not established");
        }

    case RrcState::Connected:
        switch (event) {
        case RrcEvent::ModeIdentifiedAm:
            return state_;
        case RrcEvent::ModeIdentifiedTr:
            flag_ = true;
            state_ = RrcState::AmTr;
            return state_;
        case RrcEvent::ModeIdentifiedFlight:
            // Nothing flows in flight mode; the connection is torn down.
            state_ = RrcState::Idle;
            return state_;
        case RrcEvent::UplinkTransfer:
        case RrcEvent::DownlinkTransfer:
        case RrcEvent::UplinkNasTransport:
        case RrcEvent::DownlinkNasTransport:
            return state_;
        case RrcEvent::Release:
            state_ = RrcState::Idle;
            return state_;
        case RrcEvent::SignalRecovered:
            return state_;
        default:
            throw ProtocolViolation(state_, event, "setup already complete");
        }

    case RrcState::AmTr:
        switch (event) {
        case RrcEvent::DownlinkTransfer:
        case RrcEvent::DownlinkNasTransport:
            // First downlink activity completes the entry into the
            // low-activity state.
            state_ = RrcState::EnergyEfficient;
            return state_;
        case RrcEvent::ModeIdentifiedTr:
            return state_;
        case RrcEvent::SignalRecovered:
            flag_ = false;
            state_ = RrcState::Connected;
            return state_;
        case RrcEvent::Release:
            flag_ = false;
            state_ = RrcState::Idle;
            return state_;
        case RrcEvent::UplinkTransfer:
        case RrcEvent::UplinkNasTransport:
            throw ProtocolViolation(state_, event, "uplink transmissions are suspended");
        default:
            throw ProtocolViolation(state_, event, "mode transition in progress");
        }

    case RrcState::EnergyEfficient:
        switch (event) {
        case RrcEvent::DownlinkTransfer:
        case RrcEvent::DownlinkNasTransport:
        case RrcEvent::ModeIdentifiedTr:
            return state_;
        case RrcEvent::SignalRecovered:
            flag_ = false;
            state_ = RrcState::Connected;
            return state_;
        case RrcEvent::Release:
            flag_ = false;
            state_ = RrcState::Idle;
            return state_;
        case RrcEvent::UplinkTransfer:
        case RrcEvent::UplinkNasTransport:
            throw ProtocolViolation(state_, event, "uplink transmissions are suspended");
        default:
            throw ProtocolViolation(state_, event, "illegal in downlink-only state");
        }
    }
    throw ProtocolViolation(state_, event, "unreachable state");
}

std::vector<SlotDecision> adaptive_switch(std::span<const SlotObservation> history,
                                          std::span<const AppId> demand, double target_rate_bps,
                                          const DecisionConfig& config) {
    if (history.empty())
        throw std::invalid_argument("adaptive_switch: history must be non-empty");
    if (target_rate_bps < 0.0)
        throw std::invalid_argument("adaptive_switch: target rate must be >= 0");
    if (config.window_slots < 1)
        throw std::invalid_argument("adaptive_switch: window must hold at least one slot");

    std::vector<SlotDecision> trace;
    trace.reserve(history.size());
    std::deque<SlotObservation> window;
    UeMode current = UeMode::Active;

    for (std::size_t i = 0; i < history.size(); ++i) {
        window.push_back(history[i]);
        if (window.size() > static_cast<std::size_t>(config.window_slots))
            window.pop_front();

        current = d2_decide(history[i].ss_dbm, config, current);

        SlotDecision d;
        d.slot = static_cast<int>(i);
        d.ss_dbm = history[i].ss_dbm;
        d.mode = current;
        d.links = active_links(current, demand, config);
        double snr_sum = 0.0;
        double sinr_sum = 0.0;
        for (const SlotObservation& obs : window) {
            snr_sum += obs.snr;
            sinr_sum += obs.sinr;
        }
        d.window_mean_snr = snr_sum / static_cast<double>(window.size());
        d.window_mean_sinr = sinr_sum / static_cast<double>(window.size());
        trace.push_back(std::move(d));
    }
    return trace;
}

std::string decision_trace_csv(std::span<const SlotDecision> trace) {
    std::ostringstream out;
    out << "slot,ss_dbm,mode,served_links,window_mean_snr,window_mean_sinr\n";
    for (const SlotDecision& d : trace) {
        out << d.slot << ',' << csv::format_double(d.ss_dbm) << ',' << trsim::to_string(d.mode)
            << ',';
        for (std::size_t i = 0; i < d.links.size(); ++i) {
            if (i > 0)
                out << '|';
            out << trsim::to_string(d.links[i].app) << ':' << trsim::to_string(d.links[i].direction);
        }
        out << ',' << csv::format_double(d.window_mean_snr) << ','
            << csv::format_double(d.window_mean_sinr) << '\n';
    }
    return out.str();
}

} // namespace trsim::mode
