#pragma once

#include "zenosim/experiment.hpp"

namespace zenosim {

// Exponential-tail fit of a survival curve: least-squares line through
// ln(survival) vs t using only points with t >= t_min_fit.
struct DecayFit {
    double rate = 0.0;        // 1/s
    double amplitude = 0.0;   // extrapolated survival at t = 0
    double t_min_fit = 0.0;   // s
    double residual_rms = 0.0;
    int excluded_points = 0;  // non-positive survival values skipped
};

DecayFit fit_exponential_tail(const SurvivalCurve& curve, double t_min_fit);

// -ln(survival[last]/survival[0]) / (t[last] - t[0]); +infinity when the
// final survival is zero.
double effective_rate(const SurvivalCurve& curve);

// Slope of ln(1 - survival) vs ln(t) over points with 0 < t <= t_max and
// 1 - survival in (1e-6, 0.2): ~2 for the quadratic short-time onset, ~1 for
// exponential decay.
double short_time_exponent(const SurvivalCurve& curve, double t_max);

}  // namespace zenosim
