#include "zenosim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "zenosim/parallel.hpp"

namespace zenosim {

namespace {

constexpr double kMinDepthWarn = 0.05;

void warn_if_shallow(const LatticeParams& p) {
    if (p.depth_dimless < kMinDepthWarn)
        std::cerr << "zenosim: warning: lattice depth " << p.depth_dimless
                  << " E_rec is below " << kMinDepthWarn
                  << "; there is no meaningfully trapped band\n";
}

EvolutionConfig config_for_role(Role role, const EvolutionConfig& base,
                                const RunSettings& rs) {
    EvolutionConfig cfg = base;
    if (rs.substeps_slow > 0 && role != Role::tunnel)
        cfg.substeps_per_bloch = rs.substeps_slow;
    return cfg;
}

int resolved_window(const RunSettings& rs) {
    return rs.window < 0 ? rs.band_basis_N + 4 : rs.window;
}

}  // namespace

Ensemble make_uniform_ensemble(int count) {
    if (count < 1) throw InvalidParameterError("make_uniform_ensemble: count must be >= 1");
    Ensemble e;
    e.q.resize(static_cast<size_t>(count));
    e.weight.assign(static_cast<size_t>(count), 1.0 / count);
    for (int i = 0; i < count; ++i)
        e.q[static_cast<size_t>(i)] = -1.0 + (2.0 * i + 1.0) / count;
    return e;
}

Ensemble make_gaussian_ensemble(int count, double sigma_q) {
    if (!(sigma_q > 0.0))
        throw InvalidParameterError("make_gaussian_ensemble: sigma_q must be positive");
    Ensemble e = make_uniform_ensemble(count);
    const int wings = static_cast<int>(std::ceil(6.0 * sigma_q)) + 1;
    double sum = 0.0;
    for (size_t i = 0; i < e.q.size(); ++i) {
        double w = 0.0;
        for (int k = -wings; k <= wings; ++k) {
            const double x = e.q[i] + 2.0 * k;
            w += std::exp(-0.5 * x * x / (sigma_q * sigma_q));
        }
        e.weight[i] = w;
        sum += w;
    }
    for (auto& w : e.weight) w /= sum;
    return e;
}

LadderState prepare_initial(double q, const LatticeParams& params, int band_basis_N,
                            int ladder_halfwidth) {
    if (ladder_halfwidth < band_basis_N)
        throw InvalidParameterError("prepare_initial: ladder narrower than band basis");
    const double qf = fold_quasimomentum(q);
    const BandSolution sol = solve_bands(qf, params.depth_dimless, band_basis_N);
    LadderState st(qf, ladder_halfwidth);
    for (int m = -band_basis_N; m <= band_basis_N; ++m)
        st.amp(m) = sol.vectors(m + band_basis_N, 0);
    return st;
}

int ladder_halfwidth_for(double v_final_vrec, int band_basis_N, int window_halfwidth) {
    const int drift_sites = static_cast<int>(std::ceil((std::abs(v_final_vrec) + 1.0) / 2.0));
    return drift_sites + std::max(band_basis_N, window_halfwidth) + 2;
}

Classification detection_classify(const LadderState& state, const LatticeParams& params,
                                  double window_halfwidth) {
    (void)params;
    if (!(window_halfwidth >= 0.0))
        throw InvalidParameterError("detection_classify: window must be >= 0");
    Classification c;
    const double reach = 1.0 + window_halfwidth;  // distance from the zone [-1, 1]
    for (int n = -state.N; n <= state.N; ++n) {
        const double x = state.q0 + state.drift + 2.0 * n;
        if (std::abs(x) <= reach) c.trapped_fraction += std::norm(state.amp(n));
    }
    c.tunneled_fraction = 1.0 - c.trapped_fraction;
    return c;
}

std::vector<CheckpointSample> run_schedule(double q, const Schedule& schedule,
                                           const LatticeParams& params,
                                           const EvolutionConfig& config,
                                           const RunSettings& settings) {
    warn_if_shallow(params);
    const int nb = settings.band_basis_N;
    const int window = resolved_window(settings);
    const int nfull = ladder_halfwidth_for(schedule.end_velocity() / params.v_rec, nb,
                                           window > 0 ? window : nb + 4);
    LadderState st = prepare_initial(q, params, nb, nfull);

    std::vector<CheckpointSample> out;
    double t_tun = 0.0;
    auto record = [&]() {
        out.push_back({t_tun, survival_observable(st, params, nb),
                       detection_classify(st, params, settings.detection_window)
                           .trapped_fraction});
    };

    EvolutionConfig base = config;
    base.window_halfwidth = window;

    if (settings.response_tau > 0.0) {
        const SampledProfile prof = apply_response_filter(schedule, settings.response_tau);
        for (size_t i = 0; i < prof.width.size(); ++i) {
            st = evolve_segment(st, prof.accel[i], prof.width[i],
                                config_for_role(prof.role[i], base, settings), params);
            if (prof.role[i] == Role::tunnel) {
                t_tun += prof.width[i];
                if (i + 1 == prof.width.size() || prof.role[i + 1] != Role::tunnel)
                    record();
            }
        }
    } else {
        for (const Segment& seg : schedule.segments) {
            st = evolve_segment(st, seg.accel, seg.duration,
                                config_for_role(seg.role, base, settings), params);
            if (seg.role == Role::tunnel) {
                t_tun += seg.duration;
                record();
            }
        }
    }
    record();  // schedule end
    return out;
}

std::vector<double> FamilySpec::times() const {
    std::vector<double> ts;
    if (kind == Kind::uninterrupted) {
        ts = t_tunnel_list;
        ts.push_back(0.0);
    } else {
        if (n_cycles_max < 0)
            throw InvalidParameterError("FamilySpec: n_cycles_max must be >= 0");
        for (int k = 0; k <= n_cycles_max; ++k) ts.push_back(k * t_segment);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (ts.front() < 0.0)
        throw InvalidParameterError("FamilySpec: negative tunneling time");
    return ts;
}

Schedule FamilySpec::schedule_for(double t_tunnel, const LatticeParams& params) const {
    if (kind == Kind::uninterrupted || t_tunnel == 0.0)
        return uninterrupted(params, a_trans, a_tunnel, t_tunnel, v0_vrec, v_final_vrec);
    const double kf = t_tunnel / t_segment;
    const int k = static_cast<int>(std::lround(kf));
    if (std::abs(kf - k) > 1e-9)
        throw InvalidParameterError(
            "FamilySpec: t_tunnel is not a multiple of the segment duration");
    return interrupted(params, a_trans, a_tunnel, a_interr, t_segment, t_interr, k,
                       v0_vrec, v_final_vrec);
}

namespace {

struct TrajPoint {
    double surv = 0.0;
    double trap = 0.0;
    double norm_err = 0.0;
};

std::vector<TrajPoint> run_family_q(double q, const FamilySpec& f,
                                    const std::vector<double>& times,
                                    const LatticeParams& p, const EvolutionConfig& base,
                                    const RunSettings& rs) {
    const int nb = rs.band_basis_N;
    const int window = resolved_window(rs);
    const int nfull =
        ladder_halfwidth_for(f.v_final_vrec + 1.0, nb, window > 0 ? window : nb + 4);

    EvolutionConfig fast = base;
    fast.window_halfwidth = window;
    EvolutionConfig slow = fast;
    if (rs.substeps_slow > 0) slow.substeps_per_bloch = rs.substeps_slow;

    LadderState st = prepare_initial(q, p, nb, nfull);
    st = evolve_segment(st, f.a_trans, f.v0_vrec * p.v_rec / f.a_trans, slow, p);

    std::vector<TrajPoint> out(times.size());
    auto finish = [&](const LadderState& branch, size_t idx) {
        const double closing = (f.v_final_vrec - branch.drift) * p.v_rec / f.a_trans;
        if (closing < -1e-12)
            throw InvalidScheduleError("survival_curve: velocity overshoot");
        LadderState end = closing > 0.0
                              ? evolve_segment(branch, f.a_trans, closing, slow, p)
                              : branch;
        out[idx].surv = survival_observable(end, p, nb);
        out[idx].trap =
            detection_classify(end, p, rs.detection_window).trapped_fraction;
        out[idx].norm_err = std::abs(end.norm() - 1.0);
    };

    if (f.kind == FamilySpec::Kind::uninterrupted) {
        double done = 0.0;
        for (size_t i = 0; i < times.size(); ++i) {
            if (times[i] > done) {
                st = evolve_segment(st, f.a_tunnel, times[i] - done, fast, p);
                done = times[i];
            }
            finish(st, i);
        }
    } else {
        for (size_t i = 0; i < times.size(); ++i) {
            if (i > 0) {
                if (i > 1 && f.t_interr > 0.0)
                    st = evolve_segment(st, f.a_interr, f.t_interr, slow, p);
                if (f.t_segment > 0.0)
                    st = evolve_segment(st, f.a_tunnel, f.t_segment, fast, p);
            }
            finish(st, i);
        }
    }
    return out;
}

SurvivalCurve reduce_curve(const Ensemble& e, const std::vector<double>& times,
                           const std::vector<std::vector<TrajPoint>>& per_q,
                           const std::string& label) {
    double wsum = 0.0;
    for (double w : e.weight) {
        if (w < 0.0) throw InvalidParameterError("survival_curve: negative weight");
        wsum += w;
    }
    if (!(wsum > 0.0)) throw InvalidParameterError("survival_curve: zero total weight");

    SurvivalCurve c;
    c.label = label;
    c.n_ensemble = static_cast<int>(e.q.size());
    c.t_tunnel = times;
    c.raw.assign(times.size(), 0.0);
    std::vector<double> det(times.size(), 0.0);
    for (size_t qi = 0; qi < e.q.size(); ++qi) {
        const double w = e.weight[qi] / wsum;
        for (size_t i = 0; i < times.size(); ++i) {
            c.raw[i] += w * per_q[qi][i].surv;
            det[i] += w * per_q[qi][i].trap;
            c.max_norm_error = std::max(c.max_norm_error, per_q[qi][i].norm_err);
        }
    }
    c.normalization = c.raw[0];
    c.detection_normalization = det[0];
    if (!(c.normalization > 0.0) || !(c.detection_normalization > 0.0))
        throw NumericalError("survival_curve: zero survival at t_tunnel = 0");
    c.survival.resize(times.size());
    c.detection.resize(times.size());
    for (size_t i = 0; i < times.size(); ++i) {
        c.survival[i] = c.raw[i] / c.normalization;
        c.detection[i] = det[i] / c.detection_normalization;
    }
    return c;
}

}  // namespace

SurvivalCurve survival_curve(const Ensemble& ensemble, const FamilySpec& family,
                             const LatticeParams& params, const EvolutionConfig& config,
                             const RunSettings& settings) {
    if (ensemble.q.empty())
        throw InvalidParameterError("survival_curve: empty ensemble");
    if (ensemble.weight.size() != ensemble.q.size())
        throw InvalidParameterError("survival_curve: weights and samples differ in size");
    warn_if_shallow(params);

    const std::vector<double> times = family.times();
    family.schedule_for(times.back(), params);  // validates velocity budget

    if (settings.response_tau > 0.0) {
        // The filtered profile breaks the shared-prefix structure; run the
        // generic per-schedule path.
        auto fn = [&](double t) { return family.schedule_for(t, params); };
        return survival_curve(ensemble, fn, times, params, config, settings);
    }

    std::vector<std::vector<TrajPoint>> per_q(ensemble.q.size());
    parallel_for(static_cast<int>(ensemble.q.size()), settings.threads, [&](int i) {
        per_q[static_cast<size_t>(i)] = run_family_q(ensemble.q[static_cast<size_t>(i)],
                                                     family, times, params, config,
                                                     settings);
    });
    return reduce_curve(ensemble, times, per_q, family.label);
}

SurvivalCurve survival_curve(const Ensemble& ensemble,
                             const std::function<Schedule(double)>& schedule_for,
                             const std::vector<double>& t_tunnel_list,
                             const LatticeParams& params, const EvolutionConfig& config,
                             const RunSettings& settings) {
    if (ensemble.q.empty())
        throw InvalidParameterError("survival_curve: empty ensemble");
    std::vector<double> times = t_tunnel_list;
    times.push_back(0.0);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<std::vector<TrajPoint>> per_q(ensemble.q.size());
    parallel_for(static_cast<int>(ensemble.q.size()), settings.threads, [&](int i) {
        auto& row = per_q[static_cast<size_t>(i)];
        row.resize(times.size());
        for (size_t ti = 0; ti < times.size(); ++ti) {
            const auto samples = run_schedule(ensemble.q[static_cast<size_t>(i)],
                                              schedule_for(times[ti]), params, config,
                                              settings);
            row[ti].surv = samples.back().survival;
            row[ti].trap = samples.back().trapped;
        }
    });
    return reduce_curve(ensemble, times, per_q, "");
}

std::vector<SurvivalCurve> interruption_sweep(const Ensemble& ensemble,
                                              const FamilySpec& base,
                                              const std::vector<double>& t_interr_list,
                                              const LatticeParams& params,
                                              const EvolutionConfig& config,
                                              const RunSettings& settings) {
    if (t_interr_list.empty())
        throw InvalidParameterError("interruption_sweep: empty duration list");
    if (base.kind != FamilySpec::Kind::interrupted)
        throw InvalidParameterError("interruption_sweep: base family must be interrupted");
    std::vector<SurvivalCurve> out;
    for (double ti : t_interr_list) {
        FamilySpec f = base;
        f.t_interr = ti;
        char label[64];
        std::snprintf(label, sizeof(label), "t_interr_%gus", ti * 1e6);
        f.label = label;
        out.push_back(survival_curve(ensemble, f, params, config, settings));
    }
    return out;
}

}  // namespace zenosim
