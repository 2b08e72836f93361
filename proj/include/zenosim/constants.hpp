#pragma once

namespace zenosim::consts {

// SI defining constants (exact) and CODATA 2018 values.
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double h = 6.62607015e-34;       // Planck constant, J s (exact)
inline constexpr double hbar = h / (2.0 * pi);    // reduced Planck constant, J s
inline constexpr double amu = 1.66053906660e-27;  // atomic mass unit, kg

// Sodium-23 relative atomic mass.
inline constexpr double sodium23_amu = 22.98976928;

}  // namespace zenosim::consts
