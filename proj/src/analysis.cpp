#include "zenosim/analysis.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace zenosim {

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw FitError("least_squares: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / n);
    return f;
}

}  // namespace

DecayFit fit_exponential_tail(const SurvivalCurve& curve, double t_min_fit) {
    std::vector<double> t, lns;
    int excluded = 0;
    for (size_t i = 0; i < curve.t_tunnel.size(); ++i) {
        if (curve.t_tunnel[i] < t_min_fit) continue;
        if (!(curve.survival[i] > 0.0)) {
            ++excluded;
            continue;
        }
        t.push_back(curve.t_tunnel[i]);
        lns.push_back(std::log(curve.survival[i]));
    }
    if (t.size() < 3)
        throw FitError("fit_exponential_tail: fewer than 3 usable points past t_min_fit");

    const LineFit lf = least_squares(t, lns);
    DecayFit fit;
    fit.rate = -lf.slope;
    fit.amplitude = std::exp(lf.intercept);
    fit.t_min_fit = t_min_fit;
    fit.residual_rms = lf.residual_rms;
    fit.excluded_points = excluded;
    return fit;
}

double effective_rate(const SurvivalCurve& curve) {
    if (curve.t_tunnel.size() < 2)
        throw FitError("effective_rate: need at least 2 points");
    const double s0 = curve.survival.front();
    const double s1 = curve.survival.back();
    const double dt = curve.t_tunnel.back() - curve.t_tunnel.front();
    if (!(dt > 0.0)) throw FitError("effective_rate: non-increasing time axis");
    if (!(s1 > 0.0)) return std::numeric_limits<double>::infinity();
    return -std::log(s1 / s0) / dt;
}

double short_time_exponent(const SurvivalCurve& curve, double t_max) {
    std::vector<double> lnt, lnd;
    for (size_t i = 0; i < curve.t_tunnel.size(); ++i) {
        const double t = curve.t_tunnel[i];
        if (!(t > 0.0) || t > t_max) continue;
        const double d = 1.0 - curve.survival[i];
        if (d <= 1e-6 || d >= 0.2) continue;
        lnt.push_back(std::log(t));
        lnd.push_back(std::log(d));
    }
    if (lnt.size() < 4)
        throw FitError("short_time_exponent: fewer than 4 points in the window");
    return least_squares(lnt, lnd).slope;
}

}  // namespace zenosim
