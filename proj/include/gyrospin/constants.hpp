#pragma once

#include <numbers>

namespace gyrospin::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_B = 1.380649e-23;           // J/K
inline constexpr double c = 299792458.0;              // m/s
inline constexpr double epsilon0 = 8.8541878128e-12;  // F/m
inline constexpr double amu = 1.66053906660e-27;      // kg

// defaults used when a config leaves them out
inline constexpr double diamond_density = 3500.0;            // kg/m^3
inline constexpr double gamma0_default = two_pi * 28.024e9;  // rad s^-1 T^-1
inline constexpr double dnv_default = two_pi * 2.87e9;       // rad/s

}  // namespace gyrospin::constants
