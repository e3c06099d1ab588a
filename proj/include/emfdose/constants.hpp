#pragma once

#include <string_view>

namespace emfdose::constants {

// Physical constants used throughout the library. Every module reads these;
// nothing redefines them locally.
inline constexpr double speed_of_light_m_per_s = 2.998e8;
inline constexpr double vacuum_permittivity_f_per_m = 8.854e-12;
inline constexpr double free_space_impedance_ohm = 376.73;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double four_pi = 4.0 * pi;

inline constexpr std::string_view tool_version = "0.1.0";

}  // namespace emfdose::constants
