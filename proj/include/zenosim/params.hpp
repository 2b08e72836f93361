#pragma once

#include "zenosim/constants.hpp"
#include "zenosim/errors.hpp"

namespace zenosim {

// Physical constants of one lattice configuration plus derived recoil
// quantities. All dynamics code works in recoil units: momenta in hbar*k_L,
// energies in E_rec, times in hbar/E_rec, velocities in v_rec. SI appears
// only at the configuration boundary.
struct LatticeParams {
    double mass = 0.0;           // kg
    double wavelength = 0.0;     // m, lattice light
    double k_L = 0.0;            // 1/m, 2*pi / wavelength
    double v_rec = 0.0;          // m/s, hbar*k_L / mass
    double E_rec = 0.0;          // J, hbar^2*k_L^2 / (2*mass)
    double depth_freq = 0.0;     // Hz, V0/h
    double depth_dimless = 0.0;  // V0/E_rec
};

LatticeParams derive_params(double mass, double wavelength, double depth_freq);

// tau_b = 2 v_rec / a: time for the lattice velocity to change by one
// Brillouin-zone width.
double bloch_period(const LatticeParams& p, double accel);

// delta_p = 2 m v_rec = 2 hbar k_L.
double brillouin_zone_width(const LatticeParams& p);

// Conversion factors between SI and the dimensionless recoil system.
struct UnitSystem {
    double momentum_unit = 0.0;      // hbar k_L, kg m/s
    double energy_unit = 0.0;        // E_rec, J
    double time_unit = 0.0;          // hbar / E_rec, s
    double velocity_unit = 0.0;      // v_rec, m/s
    double acceleration_unit = 0.0;  // v_rec / time_unit, m/s^2

    static UnitSystem from(const LatticeParams& p);

    double time_to_dimless(double t_si) const { return t_si / time_unit; }
    double time_to_si(double t) const { return t * time_unit; }
    double energy_to_dimless(double e_si) const { return e_si / energy_unit; }
    double energy_to_si(double e) const { return e * energy_unit; }
    double velocity_to_dimless(double v_si) const { return v_si / velocity_unit; }
    double velocity_to_si(double v) const { return v * velocity_unit; }
    double accel_to_dimless(double a_si) const { return a_si / acceleration_unit; }
    double accel_to_si(double a) const { return a * acceleration_unit; }
    double momentum_to_dimless(double p_si) const { return p_si / momentum_unit; }
    double momentum_to_si(double p) const { return p * momentum_unit; }
};

}  // namespace zenosim
