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
#include <deque>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trsim/types.hpp"

namespace trsim::mode {

/// Signal-band edges in dBm for one network operator, strictly decreasing
/// from Great to VeryPoor. A reading classifies into the best band whose
/// edge it meets or exceeds; below the VeryPoor edge is still VeryPoor.
struct OperatorProfile {
    std::string name;
    double great_dbm = 0.0;
    double good_dbm = 0.0;
    double average_dbm = 0.0;
    double poor_dbm = 0.0;
    double very_poor_dbm = 0.0;

    void validate() const;
};

// Built-in profiles.
OperatorProfile jio_profile();
OperatorProfile bsnl_profile();
OperatorProfile airtel_profile();
OperatorProfile generic_profile();
OperatorProfile profile_by_name(const std::string& name);

/// CSV schema: operator,great_dbm,good_dbm,average_dbm,poor_dbm,very_poor_dbm
std::vector<OperatorProfile> load_operator_profiles(const std::string& path);

struct DecisionConfig {
    double ss_threshold_dbm = -99.0;   // below this the handset leaves Active
    double served_band_low_dbm = -99.0;
    double served_band_high_dbm = -50.0;
    double hysteresis_db = 0.0;        // extra recovery margin; 0 keeps the plain rule
    bool a3_downlink_in_tr = false;    // serve the video class downlink-only instead of dropping it
    int window_slots = 32;             // rolling database depth for adaptive switching
};

SignalBand classify_signal(double ss_dbm, const OperatorProfile& profile);

/// Display-and-decision rule: below threshold -> ThermalRadiation, at or
/// above -> Active. current must not be Flight (flight is user-set only).
UeMode d2_decide(double ss_dbm, const DecisionConfig& config, UeMode current);

/// Application set a mode may serve.
std::vector<AppId> allowed_applications(UeMode mode);

bool serves(UeMode mode, AppId app);

/// Expands a demand set into direction-level links for a mode. Active demands
/// get both directions; ThermalRadiation drops the video class (or keeps its
/// downlink when configured) and never emits a video uplink; Flight emits
/// nothing.
std::vector<AppLink> active_links(UeMode mode, std::span<const AppId> demand,
                                  const DecisionConfig& config);

enum class RrcEvent : std::uint8_t {
    SetupRequest,
    SetupComplete,
    ModeIdentifiedAm,
    ModeIdentifiedTr,
    ModeIdentifiedFlight,
    SignalRecovered,
    Release,
    UplinkTransfer,
    DownlinkTransfer,
    UplinkNasTransport,
    DownlinkNasTransport,
};

std::string_view to_string(RrcEvent e);

/// Illegal (state, event) pairs reject with this; there is no silent default.
class ProtocolViolation : public std::runtime_error {
  public:
    ProtocolViolation(RrcState state, RrcEvent event, std::string_view reason);
};

/// Connection state machine with the two low-emission states. flag() is 1
/// exactly while in AmTr or EnergyEfficient. Entry into AmTr happens on
/// ModeIdentifiedTr; the first downlink transfer or NAS event completes the
/// transition into EnergyEfficient. One machine per handset, single owner.
class RrcMachine {
  public:
    RrcState state() const { return state_; }
    int flag() const { return flag_ ? 1 : 0; }

    /// Applies an event, returns the new state, throws ProtocolViolation on
    /// an illegal pair.
    RrcState transition(RrcEvent event);

  private:
    RrcState state_ = RrcState::Idle;
    bool flag_ = false;
    bool setup_pending_ = false;
};

struct SlotObservation {
    double snr = 0.0;
    double sinr = 0.0;
    double ss_dbm = 0.0;
};

struct SlotDecision {
    int slot = 0;
    double ss_dbm = 0.0;
    UeMode mode = UeMode::Active;
    std::vector<AppLink> links;
    double window_mean_snr = 0.0;
    double window_mean_sinr = 0.0;
};

/// Per-slot mode decisions over an observation history. Keeps a rolling
/// window of SNR/SINR (the training database), applies the display-and-
/// decision rule each slot, and returns to Active on the first slot with a
/// recovered signal.
std::vector<SlotDecision> adaptive_switch(std::span<const SlotObservation> history,
                                          std::span<const AppId> demand, double target_rate_bps,
                                          const DecisionConfig& config);

/// CSV rows (slot,ss_dbm,mode,served_links,window_mean_snr,window_mean_sinr).
std::string decision_trace_csv(std::span<const SlotDecision> trace);

} // namespace trsim::mode
