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

#include "trsim/types.hpp"

namespace trsim {

std::string_view to_string(AppId id) {
    switch (id) {
    case AppId::A1Text: return "A1";
    case AppId::A2Voice: return "A2";
    case AppId::A3Video: return "A3";
    }
    return "?";
}

std::string_view to_string(LinkDirection d) {
    return d == LinkDirection::Uplink ? "UL" : "DL";
}

std::string_view to_string(UeMode m) {
    switch (m) {
    case UeMode::Active: return "active";
    case UeMode::ThermalRadiation: return "tr";
    case UeMode::Flight: return "flight";
    }
    return "?";
}

std::string_view to_string(RrcState s) {
    switch (s) {
    case RrcState::Idle: return "RRC_IDLE";
    case RrcState::Connected: return "RRC_CONNECTED";
    case RrcState::AmTr: return "RRC_AM_TR";
    case RrcState::EnergyEfficient: return "RRC_EE";
    }
    return "?";
}

std::string_view to_string(SignalBand b) {
    switch (b) {
    case SignalBand::Great: return "great";
    case SignalBand::Good: return "good";
    case SignalBand::Average: return "average";
    case SignalBand::Poor: return "poor";
    case SignalBand::VeryPoor: return "very_poor";
    }
    return "?";
}

} // namespace trsim
