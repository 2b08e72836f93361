#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "zenosim/analysis.hpp"

using namespace zenosim;

namespace {

SurvivalCurve make_curve(const std::vector<double>& t_us,
                         const std::vector<double>& s) {
    SurvivalCurve c;
    for (double t : t_us) c.t_tunnel.push_back(t * 1e-6);
    c.survival = s;
    c.raw = s;
    c.n_ensemble = 1;
    return c;
}

}  // namespace

TEST_CASE("fit_exponential_tail: exact exponential") {
    const double gamma = 5e4;
    std::vector<double> t_us, s;
    for (int i = 0; i <= 30; ++i) {
        t_us.push_back(i * 2.0);
        s.push_back(std::exp(-gamma * i * 2.0e-6));
    }
    const DecayFit fit = fit_exponential_tail(make_curve(t_us, s), 0.0);
    CHECK(fit.rate == doctest::Approx(gamma).epsilon(1e-3));
    CHECK(fit.amplitude == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.residual_rms < 1e-10);
    CHECK(fit.excluded_points == 0);
}

TEST_CASE("fit_exponential_tail: quadratic shoulder then exponential") {
    // exponent -gamma t^2/(t + t_c): quadratic onset, rate -> gamma for t >> t_c
    const double gamma = 4e4, t_c = 2e-6;
    std::vector<double> t_us, s;
    for (int i = 0; i <= 60; ++i) {
        const double t = i * 1.5e-6;
        t_us.push_back(t * 1e6);
        s.push_back(std::exp(-gamma * t * t / (t + t_c)));
    }
    const DecayFit fit = fit_exponential_tail(make_curve(t_us, s), 10.0 * t_c);
    CHECK(fit.rate == doctest::Approx(gamma).epsilon(0.02));
}

TEST_CASE("fit_exponential_tail: constant curve, exclusions, errors") {
    const DecayFit flat = fit_exponential_tail(
        make_curve({0, 1, 2, 3, 4}, {0.8, 0.8, 0.8, 0.8, 0.8}), 0.0);
    CHECK(std::abs(flat.rate) < 1e-10);

    const DecayFit fit = fit_exponential_tail(
        make_curve({0, 1, 2, 3, 4, 5}, {1.0, 0.5, 0.25, 0.125, 0.0, -0.1}), 0.0);
    CHECK(fit.excluded_points == 2);
    CHECK(fit.rate == doctest::Approx(std::log(2.0) / 1e-6).epsilon(1e-6));

    CHECK_THROWS_AS(
        fit_exponential_tail(make_curve({0, 1, 2, 3}, {1.0, 0.5, 0.25, 0.125}), 2.5e-6),
        FitError);
    CHECK_THROWS_AS(
        fit_exponential_tail(make_curve({0, 1, 2}, {1.0, 0.0, 0.0}), 0.0), FitError);
}

TEST_CASE("fit_exponential_tail: invariant under renormalization") {
    std::vector<double> t_us, s, s2;
    for (int i = 0; i <= 20; ++i) {
        t_us.push_back(i * 1.0);
        s.push_back(std::exp(-3e4 * i * 1e-6));
        s2.push_back(0.37 * s.back());
    }
    const DecayFit a = fit_exponential_tail(make_curve(t_us, s), 0.0);
    const DecayFit b = fit_exponential_tail(make_curve(t_us, s2), 0.0);
    CHECK(a.rate == doctest::Approx(b.rate).epsilon(1e-12));
    CHECK(b.amplitude == doctest::Approx(0.37 * a.amplitude).epsilon(1e-9));
}

TEST_CASE("effective_rate") {
    std::vector<double> t_us, s;
    const double gamma = 6.2e4;
    for (int i = 0; i <= 12; ++i) {
        t_us.push_back(i * 1.0);
        s.push_back(std::exp(-gamma * i * 1e-6));
    }
    const SurvivalCurve c = make_curve(t_us, s);
    CHECK(effective_rate(c) == doctest::Approx(gamma).epsilon(1e-9));
    CHECK(effective_rate(c) ==
          doctest::Approx(fit_exponential_tail(c, 0.0).rate).epsilon(0.005));

    // zero final survival: infinite-rate sentinel
    const SurvivalCurve dead = make_curve({0, 1, 2}, {1.0, 0.5, 0.0});
    CHECK(std::isinf(effective_rate(dead)));

    SurvivalCurve c1 = make_curve({0}, {1.0});
    CHECK_THROWS_AS(effective_rate(c1), FitError);
}

TEST_CASE("effective_rate: restart property on a geometric curve") {
    // n identical interrupted cycles, each keeping the same fraction
    const double f = 0.943;
    std::vector<double> t_us, s;
    for (int k = 0; k <= 10; ++k) {
        t_us.push_back(k * 1.0);
        s.push_back(std::pow(f, k));
    }
    const SurvivalCurve c = make_curve(t_us, s);
    const double r1 = effective_rate(make_curve({t_us[0], t_us[1]}, {s[0], s[1]}));
    for (int n : {2, 5, 10}) {
        SurvivalCurve sub;
        sub.t_tunnel.assign(c.t_tunnel.begin(), c.t_tunnel.begin() + n + 1);
        sub.survival.assign(c.survival.begin(), c.survival.begin() + n + 1);
        CHECK(effective_rate(sub) == doctest::Approx(r1).epsilon(0.01));
    }
}

TEST_CASE("short_time_exponent") {
    // exponential: exponent 1
    std::vector<double> t_us, s;
    for (int i = 0; i <= 40; ++i) {
        const double t = i * 0.05e-6;
        t_us.push_back(t * 1e6);
        s.push_back(std::exp(-5e4 * t));
    }
    CHECK(short_time_exponent(make_curve(t_us, s), 2.1e-6) ==
          doctest::Approx(1.0).epsilon(0.05));

    // quadratic onset 1 - (t/tau)^2: exponent 2
    std::vector<double> t2, s2;
    const double tau = 10e-6;
    for (int i = 0; i <= 40; ++i) {
        const double t = i * 0.1e-6;
        t2.push_back(t * 1e6);
        s2.push_back(1.0 - (t / tau) * (t / tau));
    }
    CHECK(short_time_exponent(make_curve(t2, s2), 4.1e-6) ==
          doctest::Approx(2.0).epsilon(0.01));

    // empty window
    CHECK_THROWS_AS(
        short_time_exponent(make_curve({0, 1, 2, 3}, {1.0, 1.0, 1.0, 1.0}), 3e-6),
        FitError);
}
