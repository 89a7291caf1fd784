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

#include <array>
#include <cstdint>
#include <string_view>

namespace trsim {

/// Application classes a handset may demand, ordered by bandwidth appetite.
enum class AppId : std::uint8_t {
    A1Text = 0,
    A2Voice = 1,
    A3Video = 2,
};

inline constexpr std::array<AppId, 3> kAllApps{AppId::A1Text, AppId::A2Voice, AppId::A3Video};

enum class LinkDirection : std::uint8_t { Uplink, Downlink };

/// One served application-direction pair; the unit of interference accounting.
struct AppLink {
    AppId app;
    LinkDirection direction;

    friend bool operator==(const AppLink&, const AppLink&) = default;
};

/// Operating mode of a user equipment.
enum class UeMode : std::uint8_t {
    Active,           // uplink + downlink for every demanded application
    ThermalRadiation, // downlink-only, high-bandwidth applications unserved
    Flight,           // no transfer in either direction
};

/// Connection states, including the two low-emission additions.
enum class RrcState : std::uint8_t {
    Idle,
    Connected,
    AmTr,             // transitional state on the way into low-emission operation
    EnergyEfficient,  // downlink-only low-activity state
};

enum class SignalBand : std::uint8_t { Great, Good, Average, Poor, VeryPoor };

std::string_view to_string(AppId id);
std::string_view to_string(LinkDirection d);
std::string_view to_string(UeMode m);
std::string_view to_string(RrcState s);
std::string_view to_string(SignalBand b);

} // namespace trsim
