#include "zenosim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "zenosim/errors.hpp"

namespace zenosim {

const char* role_name(Role r) {
    switch (r) {
        case Role::transport: return "transport";
        case Role::tunnel: return "tunnel";
        case Role::interruption: return "interruption";
    }
    return "?";
}

double Schedule::total_tunnel_time() const {
    double t = 0.0;
    for (const auto& s : segments)
        if (s.role == Role::tunnel) t += s.duration;
    return t;
}

double Schedule::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

double Schedule::end_velocity() const {
    double v = 0.0;
    for (const auto& s : segments) v += s.accel * s.duration;
    return v;
}

Schedule Schedule::merged() const {
    Schedule out = *this;
    out.segments.clear();
    for (const auto& s : segments) {
        if (s.duration == 0.0) continue;
        if (!out.segments.empty() && out.segments.back().accel == s.accel &&
            out.segments.back().role == s.role) {
            out.segments.back().duration += s.duration;
        } else {
            out.segments.push_back(s);
        }
    }
    return out;
}

namespace {

void check_common(double a_trans, double a_tunnel, double v0_vrec, double v_final_vrec) {
    if (!(a_trans > 0.0) || !(a_tunnel > 0.0))
        throw InvalidParameterError("schedule: accelerations must be positive");
    if (!(v0_vrec > 0.0) || !(v_final_vrec > v0_vrec))
        throw InvalidParameterError("schedule: need v_final > v0 > 0");
}

}  // namespace

Schedule uninterrupted(const LatticeParams& p, double a_trans, double a_tunnel,
                       double t_tunnel, double v0_vrec, double v_final_vrec) {
    check_common(a_trans, a_tunnel, v0_vrec, v_final_vrec);
    if (!(t_tunnel >= 0.0))
        throw InvalidParameterError("uninterrupted: t_tunnel must be >= 0");

    const double v0 = v0_vrec * p.v_rec;
    const double v_final = v_final_vrec * p.v_rec;
    const double closing = (v_final - v0 - a_tunnel * t_tunnel) / a_trans;
    if (closing < 0.0)
        throw InvalidScheduleError(
            "uninterrupted: tunnel phase already exceeds the final velocity");

    Schedule s;
    s.a_trans = a_trans;
    s.a_tunnel = a_tunnel;
    s.a_interr = a_trans;
    s.segments.push_back({a_trans, v0 / a_trans, Role::transport});
    if (t_tunnel > 0.0) s.segments.push_back({a_tunnel, t_tunnel, Role::tunnel});
    if (closing > 0.0) s.segments.push_back({a_trans, closing, Role::transport});
    return s;
}

Schedule interrupted(const LatticeParams& p, double a_trans, double a_tunnel,
                     double a_interr, double t_segment, double t_interr, int n_cycles,
                     double v0_vrec, double v_final_vrec) {
    check_common(a_trans, a_tunnel, v0_vrec, v_final_vrec);
    if (!(a_interr > 0.0))
        throw InvalidParameterError("interrupted: a_interr must be positive");
    if (!(t_segment >= 0.0) || !(t_interr >= 0.0))
        throw InvalidParameterError("interrupted: durations must be >= 0");
    if (n_cycles < 1)
        throw InvalidParameterError("interrupted: n_cycles must be >= 1");

    const double v_final = v_final_vrec * p.v_rec;

    Schedule s;
    s.a_trans = a_trans;
    s.a_tunnel = a_tunnel;
    s.a_interr = a_interr;
    s.segments.push_back({a_trans, v0_vrec * p.v_rec / a_trans, Role::transport});
    double v = v0_vrec * p.v_rec;
    for (int c = 0; c < n_cycles; ++c) {
        if (t_segment > 0.0) s.segments.push_back({a_tunnel, t_segment, Role::tunnel});
        v += a_tunnel * t_segment;
        if (c + 1 < n_cycles) {
            if (t_interr > 0.0)
                s.segments.push_back({a_interr, t_interr, Role::interruption});
            v += a_interr * t_interr;
        }
    }
    const double closing = (v_final - v) / a_trans;
    if (closing < 0.0)
        throw InvalidScheduleError(
            "interrupted: velocity overshoot, sequence reaches v_final before the "
            "closing transport");
    if (closing > 0.0) s.segments.push_back({a_trans, closing, Role::transport});
    return s;
}

std::string schedule_table(const Schedule& s) {
    std::string out = "# t_start_us  accel_m_s2  role\n";
    char line[128];
    double t = 0.0;
    for (const auto& seg : s.segments) {
        std::snprintf(line, sizeof(line), "%.12g  %.12g  %s\n", t * 1e6, seg.accel,
                      role_name(seg.role));
        out += line;
        t += seg.duration;
    }
    return out;
}

double SampledProfile::total_duration() const {
    double t = 0.0;
    for (double w : width) t += w;
    return t;
}

double SampledProfile::integral() const {
    double v = 0.0;
    for (size_t i = 0; i < width.size(); ++i) v += accel[i] * width[i];
    return v;
}

SampledProfile apply_response_filter(const Schedule& s, double time_constant) {
    if (!(time_constant >= 0.0))
        throw InvalidParameterError("apply_response_filter: time_constant must be >= 0");

    double min_seg = std::numeric_limits<double>::infinity();
    for (const auto& seg : s.segments)
        if (seg.duration > 0.0) min_seg = std::min(min_seg, seg.duration);
    if (!std::isfinite(min_seg)) min_seg = 1.0;

    const double cell = time_constant > 0.0 ? time_constant / 10.0 : min_seg / 10.0;

    SampledProfile out;
    double t = 0.0;
    double a_f = 0.0;  // filter state; the lattice starts at rest
    for (const auto& seg : s.segments) {
        if (seg.duration == 0.0) continue;
        const long n = std::max<long>(1, static_cast<long>(std::ceil(seg.duration / cell - 1e-12)));
        const double w = seg.duration / static_cast<double>(n);
        for (long i = 0; i < n; ++i) {
            out.t_start.push_back(t);
            out.width.push_back(w);
            out.target.push_back(seg.accel);
            out.role.push_back(seg.role);
            if (time_constant > 0.0) {
                // analytic first-order response, sampled at the cell midpoint
                const double mid = a_f + (seg.accel - a_f) *
                                             (1.0 - std::exp(-0.5 * w / time_constant));
                out.accel.push_back(mid);
                a_f = a_f + (seg.accel - a_f) * (1.0 - std::exp(-w / time_constant));
            } else {
                out.accel.push_back(seg.accel);
                a_f = seg.accel;
            }
            t += w;
        }
    }
    return out;
}

double effective_tunnel_time(const SampledProfile& profile, double a_tunnel,
                             double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw InvalidParameterError("effective_tunnel_time: threshold must be in (0,1)");
    double t = 0.0;
    for (size_t i = 0; i < profile.width.size(); ++i)
        if (profile.accel[i] >= threshold * a_tunnel) t += profile.width[i];
    return t;
}

}  // namespace zenosim
