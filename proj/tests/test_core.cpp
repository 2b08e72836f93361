#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "zenosim/params.hpp"

using namespace zenosim;

namespace {

LatticeParams sodium(double depth_freq = 91e3) {
    return derive_params(23.0 * consts::amu, 589e-9, depth_freq);
}

}  // namespace

TEST_CASE("derive_params: sodium recoil quantities") {
    const LatticeParams p = sodium();

    // single-photon recoil velocity, 3 cm/s rounded in the source material
    CHECK(p.v_rec == doctest::Approx(0.0295).epsilon(0.002));
    CHECK(p.v_rec == doctest::Approx(0.03).epsilon(0.02));
    CHECK(p.v_rec > 0.029);
    CHECK(p.v_rec < 0.031);

    // independent route: E_rec/h = hbar * k_L^2 / (4 pi m)
    const double k = 2.0 * consts::pi / 589e-9;
    const double erec_freq_oracle =
        consts::hbar * k * k / (4.0 * consts::pi * 23.0 * consts::amu);
    CHECK(p.E_rec / consts::h == doctest::Approx(erec_freq_oracle).epsilon(1e-12));
    CHECK(p.E_rec / consts::h == doctest::Approx(25.0e3).epsilon(0.002));

    CHECK(p.depth_dimless == doctest::Approx(3.64).epsilon(0.002));
    CHECK(p.k_L == doctest::Approx(2.0 * consts::pi / 589e-9).epsilon(1e-15));
}

TEST_CASE("derive_params: zero depth and closure invariant") {
    CHECK(sodium(0.0).depth_dimless == 0.0);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mass(1.0, 200.0), wl(200e-9, 2e-6),
        depth(0.0, 500e3);
    for (int i = 0; i < 200; ++i) {
        const LatticeParams p = derive_params(mass(rng) * consts::amu, wl(rng), depth(rng));
        CHECK(p.depth_dimless * p.E_rec ==
              doctest::Approx(consts::h * p.depth_freq).epsilon(1e-12));
        CHECK(p.v_rec > 0.0);
        CHECK(p.E_rec > 0.0);
    }
}

TEST_CASE("derive_params: invalid inputs") {
    CHECK_THROWS_AS(derive_params(0.0, 589e-9, 91e3), InvalidParameterError);
    CHECK_THROWS_AS(derive_params(-1.0, 589e-9, 91e3), InvalidParameterError);
    CHECK_THROWS_AS(derive_params(23 * consts::amu, 0.0, 91e3), InvalidParameterError);
    CHECK_THROWS_AS(derive_params(23 * consts::amu, 589e-9, -1.0), InvalidParameterError);
}

TEST_CASE("bloch_period: values and identity") {
    const LatticeParams p = sodium();
    CHECK(bloch_period(p, 2000.0) == doctest::Approx(30e-6).epsilon(0.02));
    CHECK(bloch_period(p, 15000.0) == doctest::Approx(3.93e-6).epsilon(0.005));

    // unit-free identity: parameters chosen so v_rec = 1
    const LatticeParams unit = derive_params(consts::hbar * 2.0 * consts::pi, 1.0, 0.0);
    CHECK(unit.v_rec == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bloch_period(unit, 2.0) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> accel(1.0, 1e5);
    for (int i = 0; i < 100; ++i) {
        const double a = accel(rng);
        CHECK(bloch_period(p, a) * a == doctest::Approx(2.0 * p.v_rec).epsilon(1e-14));
    }
    CHECK_THROWS_AS(bloch_period(p, 0.0), InvalidParameterError);
    CHECK_THROWS_AS(bloch_period(p, -10.0), InvalidParameterError);
}

TEST_CASE("brillouin_zone_width") {
    const LatticeParams p = sodium();
    CHECK(brillouin_zone_width(p) == doctest::Approx(2.25e-27).epsilon(0.005));
    CHECK(brillouin_zone_width(p) ==
          doctest::Approx(2.0 * consts::hbar * p.k_L).epsilon(1e-14));

    const UnitSystem us = UnitSystem::from(p);
    CHECK(us.momentum_to_dimless(brillouin_zone_width(p)) ==
          doctest::Approx(2.0).epsilon(1e-12));

    // doubling the mass at fixed v_rec (wavelength halved) doubles the width
    const LatticeParams p2 = derive_params(2.0 * 23.0 * consts::amu, 589e-9 / 2.0, 0.0);
    CHECK(p2.v_rec == doctest::Approx(p.v_rec).epsilon(1e-14));
    CHECK(brillouin_zone_width(p2) ==
          doctest::Approx(2.0 * brillouin_zone_width(p)).epsilon(1e-14));
}

TEST_CASE("unit system round trips") {
    const LatticeParams p = sodium();
    const UnitSystem us = UnitSystem::from(p);
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> mag(-12.0, 6.0), sign(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::copysign(std::pow(10.0, mag(rng)), sign(rng));
        CHECK(us.time_to_si(us.time_to_dimless(v)) == doctest::Approx(v).epsilon(1e-12));
        CHECK(us.energy_to_si(us.energy_to_dimless(v)) == doctest::Approx(v).epsilon(1e-12));
        CHECK(us.velocity_to_si(us.velocity_to_dimless(v)) ==
              doctest::Approx(v).epsilon(1e-12));
        CHECK(us.accel_to_si(us.accel_to_dimless(v)) == doctest::Approx(v).epsilon(1e-12));
        CHECK(us.momentum_to_si(us.momentum_to_dimless(v)) ==
              doctest::Approx(v).epsilon(1e-12));
    }

    // acceleration unit ties the velocity and time units together
    CHECK(us.acceleration_unit ==
          doctest::Approx(us.velocity_unit / us.time_unit).epsilon(1e-14));
}
