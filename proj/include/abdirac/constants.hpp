#pragma once

namespace abdirac::codata
{
// CODATA 2018 recommended values (SI).
inline constexpr double speed_of_light = 299792458.0;          // m/s, exact
inline constexpr double elementary_charge = 1.602176634e-19;   // C, exact
inline constexpr double reduced_planck = 1.054571817e-34;      // J s
inline constexpr double electron_mass = 9.1093837015e-31;      // kg
inline constexpr double electron_volt = elementary_charge;     // J

} // namespace abdirac::codata
