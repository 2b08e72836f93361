#include "zenosim/params.hpp"

#include <cmath>

namespace zenosim {

LatticeParams derive_params(double mass, double wavelength, double depth_freq) {
    if (!(mass > 0.0))
        throw InvalidParameterError("derive_params: mass must be positive");
    if (!(wavelength > 0.0))
        throw InvalidParameterError("derive_params: wavelength must be positive");
    if (!(depth_freq >= 0.0))
        throw InvalidParameterError("derive_params: depth_freq must be non-negative");

    LatticeParams p;
    p.mass = mass;
    p.wavelength = wavelength;
    p.k_L = 2.0 * consts::pi / wavelength;
    p.v_rec = consts::hbar * p.k_L / mass;
    p.E_rec = consts::hbar * consts::hbar * p.k_L * p.k_L / (2.0 * mass);
    p.depth_freq = depth_freq;
    p.depth_dimless = depth_freq * consts::h / p.E_rec;
    return p;
}

double bloch_period(const LatticeParams& p, double accel) {
    if (!(accel > 0.0))
        throw InvalidParameterError("bloch_period: acceleration must be positive");
    return 2.0 * p.v_rec / accel;
}

double brillouin_zone_width(const LatticeParams& p) {
    return 2.0 * p.mass * p.v_rec;
}

UnitSystem UnitSystem::from(const LatticeParams& p) {
    UnitSystem u;
    u.momentum_unit = consts::hbar * p.k_L;
    u.energy_unit = p.E_rec;
    u.time_unit = consts::hbar / p.E_rec;
    u.velocity_unit = p.v_rec;
    u.acceleration_unit = p.v_rec / u.time_unit;
    return u;
}

}  // namespace zenosim
