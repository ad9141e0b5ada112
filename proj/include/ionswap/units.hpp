#pragma once

#include <string>
#include <string_view>

namespace ionswap::units {

// Internal unit system: mass in amu, length in um, time in us.
// The derived energy unit is amu*um^2/us^2 = 1.66053906660e-27 J, the derived
// velocity unit is exactly 1 m/s.

// CODATA 2018 SI values.
inline constexpr double elementary_charge_C = 1.602176634e-19;
inline constexpr double coulomb_constant_SI = 8.9875517923e9;  // 1/(4 pi eps0)
inline constexpr double amu_kg = 1.66053906660e-27;
inline constexpr double hbar_Js = 1.054571817e-34;

inline constexpr double energy_unit_J = amu_kg;          // amu*(um/us)^2
inline constexpr double length_unit_m = 1e-6;
inline constexpr double time_unit_s = 1e-6;

// Coulomb coupling C_C = e^2/(4 pi eps0), internal energy*length.
inline constexpr double coulomb_coupling =
    elementary_charge_C * elementary_charge_C * coulomb_constant_SI /
    (energy_unit_J * length_unit_m);

// Reduced Planck constant, internal energy*time.
inline constexpr double hbar = hbar_Js / (energy_unit_J * time_unit_s);

// Quartic coefficient conversion: N/m^3 (= J/m^4) to internal energy/length^4.
inline constexpr double quartic_unit_SI = energy_unit_J / (length_unit_m *
    length_unit_m * length_unit_m * length_unit_m);

// Linear coefficient (field term) conversion: a homogeneous field E in V/m
// acting on charge e contributes gamma = e*E with units energy/length.
inline constexpr double gamma_unit_SI = energy_unit_J / length_unit_m;

// Multiplicative factor taking "1 <unit>" to internal units. Throws
// ConfigError for unknown unit names. "d_c" is handled by the config layer,
// not here. The empty unit is dimensionless (factor 1).
double unit_factor(std::string_view unit);

// Parses "<number> <unit>" (unit optional) into internal units.
double parse_quantity(std::string_view text);

// Formats an internal value in the requested unit, shortest round-trip digits.
std::string format_quantity(double internal_value, std::string_view unit);

}  // namespace ionswap::units
