#pragma once

#include <numbers>

namespace hpmsim {

// Frozen at the values used by the reference model so golden numbers match.
inline constexpr double kSpeedOfLight = 2.998e8;      // m/s
inline constexpr double kFreeSpaceImpedance = 377.0;  // ohm
inline constexpr double kVacuumPermeability = 4.0e-7 * std::numbers::pi;  // H/m
inline constexpr double kPi = std::numbers::pi;

// Np -> dB, 20*log10(e) rounded as commonly quoted.
inline constexpr double kNeperToDecibel = 8.686;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace hpmsim
