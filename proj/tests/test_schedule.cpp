#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zenosim/dynamics.hpp"
#include "zenosim/experiment.hpp"
#include "zenosim/schedule.hpp"

using namespace zenosim;

namespace {

LatticeParams sodium(double depth_freq = 91e3) {
    return derive_params(consts::sodium23_amu * consts::amu, 589e-9, depth_freq);
}

}  // namespace

TEST_CASE("uninterrupted: segment layout and velocity closure") {
    const LatticeParams p = sodium();

    const Schedule zero = uninterrupted(p, 2000.0, 15000.0, 0.0, 35.0, 75.0);
    CHECK(zero.total_tunnel_time() == 0.0);
    for (const auto& s : zero.segments) CHECK(s.role != Role::tunnel);

    const Schedule s = uninterrupted(p, 2000.0, 15000.0, 20e-6, 35.0, 75.0);
    REQUIRE(s.segments.size() == 3);
    CHECK(s.segments[0].role == Role::transport);
    CHECK(s.segments[0].duration == doctest::Approx(516e-6).epsilon(0.005));
    CHECK(s.segments[1].role == Role::tunnel);
    CHECK(s.total_tunnel_time() == 20e-6);
    CHECK(s.end_velocity() == doctest::Approx(75.0 * p.v_rec).epsilon(1e-12));
}

TEST_CASE("uninterrupted: errors") {
    const LatticeParams p = sodium();
    // tunnel phase already exceeds v_final
    CHECK_THROWS_AS(uninterrupted(p, 2000.0, 15000.0, 100e-6, 35.0, 75.0),
                    InvalidScheduleError);
    CHECK_THROWS_AS(uninterrupted(p, -2000.0, 15000.0, 1e-6, 35.0, 75.0),
                    InvalidParameterError);
    CHECK_THROWS_AS(uninterrupted(p, 2000.0, 15000.0, 1e-6, 75.0, 35.0),
                    InvalidParameterError);
    CHECK_THROWS_AS(uninterrupted(p, 2000.0, 15000.0, -1e-6, 35.0, 75.0),
                    InvalidParameterError);
}

TEST_CASE("interrupted: tunnel time bookkeeping") {
    const LatticeParams p = sodium();
    for (int k : {1, 5, 14}) {
        const Schedule s =
            interrupted(p, 2000.0, 15000.0, 2000.0, 1e-6, 50e-6, k, 35.0, 90.0);
        CHECK(s.total_tunnel_time() == doctest::Approx(k * 1e-6).epsilon(1e-14));
        CHECK(s.end_velocity() == doctest::Approx(90.0 * p.v_rec).epsilon(1e-12));
        int tunnels = 0, interruptions = 0;
        for (const auto& seg : s.segments) {
            if (seg.role == Role::tunnel) ++tunnels;
            if (seg.role == Role::interruption) ++interruptions;
        }
        CHECK(tunnels == k);
        CHECK(interruptions == k - 1);
    }
    // anti-Zeno segmentation
    const Schedule az = interrupted(p, 2800.0, 15000.0, 2800.0, 5e-6, 40e-6, 6, 35.0, 90.0);
    CHECK(az.total_tunnel_time() == doctest::Approx(30e-6).epsilon(1e-14));
}

TEST_CASE("interrupted: degenerate interruption merges to uninterrupted") {
    const LatticeParams p = sodium();
    const Schedule a =
        interrupted(p, 2000.0, 15000.0, 2000.0, 2e-6, 0.0, 4, 35.0, 75.0).merged();
    const Schedule b = uninterrupted(p, 2000.0, 15000.0, 8e-6, 35.0, 75.0).merged();
    REQUIRE(a.segments.size() == b.segments.size());
    for (size_t i = 0; i < a.segments.size(); ++i) {
        CHECK(a.segments[i].accel == b.segments[i].accel);
        CHECK(a.segments[i].duration == doctest::Approx(b.segments[i].duration).epsilon(1e-12));
        CHECK(a.segments[i].role == b.segments[i].role);
    }
}

TEST_CASE("interrupted: velocity overshoot") {
    const LatticeParams p = sodium();
    CHECK_THROWS_AS(interrupted(p, 2000.0, 15000.0, 2000.0, 1e-6, 50e-6, 14, 35.0, 75.0),
                    InvalidScheduleError);
    CHECK_THROWS_AS(interrupted(p, 2000.0, 15000.0, 2000.0, 1e-6, 50e-6, 0, 35.0, 90.0),
                    InvalidParameterError);
}

TEST_CASE("schedule invariants: additivity and zero-duration merging") {
    const LatticeParams p = sodium();
    const Schedule a = uninterrupted(p, 2000.0, 15000.0, 4e-6, 35.0, 75.0);
    const Schedule b = interrupted(p, 2000.0, 15000.0, 2000.0, 1e-6, 50e-6, 3, 35.0, 90.0);
    Schedule cat = a;
    cat.segments.insert(cat.segments.end(), b.segments.begin(), b.segments.end());
    CHECK(cat.total_tunnel_time() ==
          doctest::Approx(a.total_tunnel_time() + b.total_tunnel_time()).epsilon(1e-14));

    // inserting zero-duration segments does not change the evolved state
    Schedule padded = a;
    padded.segments.insert(padded.segments.begin() + 1, {15000.0, 0.0, Role::tunnel});
    padded.segments.push_back({2000.0, 0.0, Role::transport});
    EvolutionConfig cfg;
    cfg.substeps_per_bloch = 300;
    RunSettings rs;
    rs.band_basis_N = 8;
    const auto s1 = run_schedule(0.25, a, p, cfg, rs);
    const auto s2 = run_schedule(0.25, padded, p, cfg, rs);
    CHECK(s1.back().survival == s2.back().survival);
}

TEST_CASE("schedule_table") {
    const LatticeParams p = sodium();
    const std::string table =
        schedule_table(uninterrupted(p, 2000.0, 15000.0, 5e-6, 35.0, 75.0));
    CHECK(table.find("t_start_us") != std::string::npos);
    CHECK(table.find("transport") != std::string::npos);
    CHECK(table.find("tunnel") != std::string::npos);
    CHECK(table.rfind("0  ", 0) == std::string::npos);  // header first
}

TEST_CASE("apply_response_filter: unfiltered profile reproduces the steps") {
    const LatticeParams p = sodium();
    const Schedule s = interrupted(p, 2000.0, 15000.0, 2000.0, 1e-6, 50e-6, 3, 35.0, 90.0);
    const SampledProfile prof = apply_response_filter(s, 0.0);
    CHECK(prof.total_duration() == doctest::Approx(s.total_duration()).epsilon(1e-12));
    for (size_t i = 0; i < prof.accel.size(); ++i) CHECK(prof.accel[i] == prof.target[i]);
    CHECK(prof.integral() == doctest::Approx(s.end_velocity()).epsilon(1e-12));
}

TEST_CASE("apply_response_filter: analytic first-order response") {
    const LatticeParams p = sodium();
    Schedule s;
    s.a_trans = s.a_interr = 1000.0;
    s.a_tunnel = 1000.0;
    s.segments = {{1000.0, 10e-6, Role::transport}};
    const double tau = 1e-6;
    const SampledProfile prof = apply_response_filter(s, tau);
    for (size_t i = 0; i < prof.accel.size(); ++i) {
        const double mid = prof.t_start[i] + 0.5 * prof.width[i];
        CHECK(prof.accel[i] ==
              doctest::Approx(1000.0 * (1.0 - std::exp(-mid / tau))).epsilon(1e-12));
    }
    // value at t = tau is a0 (1 - 1/e)
    size_t at_tau = 0;
    for (size_t i = 0; i < prof.accel.size(); ++i)
        if (std::abs(prof.t_start[i] + 0.5 * prof.width[i] - tau) <
            std::abs(prof.t_start[at_tau] + 0.5 * prof.width[at_tau] - tau))
            at_tau = i;
    CHECK(prof.accel[at_tau] == doctest::Approx(1000.0 * (1.0 - 1.0 / std::exp(1.0)))
                                    .epsilon(0.06));
}

TEST_CASE("apply_response_filter: velocity preserved after settling") {
    const LatticeParams p = sodium();
    const Schedule s = uninterrupted(p, 2000.0, 15000.0, 20e-6, 35.0, 75.0);
    const SampledProfile prof = apply_response_filter(s, 0.2e-6);
    CHECK(prof.integral() == doctest::Approx(s.end_velocity()).epsilon(1e-3));
}

TEST_CASE("effective_tunnel_time") {
    const LatticeParams p = sodium();
    const Schedule s = interrupted(p, 2000.0, 15000.0, 2000.0, 1e-6, 50e-6, 5, 35.0, 90.0);

    const SampledProfile ideal = apply_response_filter(s, 0.0);
    CHECK(effective_tunnel_time(ideal, 15000.0, 0.9) ==
          doctest::Approx(5e-6).epsilon(1e-12));

    const SampledProfile filtered = apply_response_filter(s, 0.2e-6);
    const double eff = effective_tunnel_time(filtered, 15000.0, 0.9);
    CHECK(eff < 5e-6);  // rise and fall times eat into each pulse
    CHECK(eff > 0.0);

    // threshold -> 0+ approaches the whole duration where a > 0
    CHECK(effective_tunnel_time(ideal, 15000.0, 1e-9) ==
          doctest::Approx(s.total_duration()).epsilon(1e-9));

    CHECK_THROWS_AS(effective_tunnel_time(ideal, 15000.0, 0.0), InvalidParameterError);
    CHECK_THROWS_AS(effective_tunnel_time(ideal, 15000.0, 1.0), InvalidParameterError);
}
