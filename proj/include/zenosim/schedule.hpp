#pragma once

#include <string>
#include <vector>

#include "zenosim/params.hpp"

namespace zenosim {

enum class Role { transport, tunnel, interruption };

const char* role_name(Role r);

// One constant-acceleration stretch of the profile.
struct Segment {
    double accel = 0.0;     // m/s^2
    double duration = 0.0;  // s
    Role role = Role::transport;
};

// Piecewise-constant acceleration profile a(t). Accelerations and durations
// are SI; velocities in the builders are specified in units of v_rec.
struct Schedule {
    std::vector<Segment> segments;
    double a_tunnel = 0.0;  // m/s^2
    double a_trans = 0.0;
    double a_interr = 0.0;

    // Sum of tunnel-role durations ("the total tunneling time is the sum of
    // all the tunneling segments").
    double total_tunnel_time() const;
    double total_duration() const;
    double end_velocity() const;  // m/s, sum of a * duration

    // Adjacent segments with equal acceleration and role merged,
    // zero-duration segments dropped.
    Schedule merged() const;
};

// transport from rest to v0, tunnel for t_tunnel, transport to v_final.
Schedule uninterrupted(const LatticeParams& p, double a_trans, double a_tunnel,
                       double t_tunnel, double v0_vrec, double v_final_vrec);

// transport to v0, then n_cycles repetitions of [tunnel(t_segment),
// interruption(t_interr)] with the final interruption replaced by the
// closing transport to v_final.
Schedule interrupted(const LatticeParams& p, double a_trans, double a_tunnel,
                     double a_interr, double t_segment, double t_interr, int n_cycles,
                     double v0_vrec, double v_final_vrec);

// Plain-text audit table (t_start, a, role), one line per segment.
std::string schedule_table(const Schedule& s);

// a(t) sampled on a grid of cells aligned to segment boundaries. `accel`
// holds the cell-midpoint value of the (possibly filtered) profile and
// `target` the unfiltered step value of the cell.
struct SampledProfile {
    std::vector<double> t_start;   // s, cell start
    std::vector<double> width;     // s
    std::vector<double> accel;     // m/s^2, filtered, at cell midpoint
    std::vector<double> target;    // m/s^2, ideal step value
    std::vector<Role> role;

    double total_duration() const;
    double integral() const;  // sum accel * width (velocity gain)
};

// First-order low-pass response a_f' = (a_target - a_f)/time_constant,
// integrated analytically per cell. time_constant = 0 reproduces the ideal
// steps. The cell width is at most time_constant/10 (or a tenth of the
// shortest positive segment when unfiltered).
SampledProfile apply_response_filter(const Schedule& s, double time_constant);

// Total time during which a(t) >= threshold * a_tunnel.
double effective_tunnel_time(const SampledProfile& profile, double a_tunnel,
                             double threshold);

}  // namespace zenosim
