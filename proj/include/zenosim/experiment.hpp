#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zenosim/dynamics.hpp"
#include "zenosim/params.hpp"
#include "zenosim/schedule.hpp"

namespace zenosim {

// Quasimomentum samples with weights (non-negative, summing to one).
struct Ensemble {
    std::vector<double> q;
    std::vector<double> weight;
};

// Midpoint grid over the first Brillouin zone; the purified first band is
// treated as uniformly filled.
Ensemble make_uniform_ensemble(int count);

// Same grid, weighted by the initial velocity spread folded into the zone.
// sigma_q in units of hbar k_L (the experiment's spread is ~6).
Ensemble make_gaussian_ensemble(int count, double sigma_q);

// Band-0 eigenvector at the folded q, embedded in a ladder of the given
// halfwidth; t = 0, drift = 0.
LadderState prepare_initial(double q, const LatticeParams& params, int band_basis_N,
                            int ladder_halfwidth);

// Ladder halfwidth needed for a schedule ending at v_final (in v_rec units):
// the band center walks one site per two units of drift.
int ladder_halfwidth_for(double v_final_vrec, int band_basis_N, int window_halfwidth);

struct Classification {
    double trapped_fraction = 0.0;
    double tunneled_fraction = 0.0;
};

// Momentum-window observable mimicking the imaging measurement: summed
// |amplitude|^2 of ladder momenta within window_halfwidth (units of hbar k_L)
// of the first Brillouin zone around the comoving momentum class.
Classification detection_classify(const LadderState& state, const LatticeParams& params,
                                  double window_halfwidth = 1.0);

// Driver-level knobs shared by the ensemble runners.
struct RunSettings {
    int band_basis_N = 8;        // band basis for preparation and projection
    int window = -1;             // -1: band_basis_N + 4, 0: full ladder, >0: explicit
    int substeps_slow = 0;       // 0: same as substeps_per_bloch; used for
                                 // transport and interruption segments
    double response_tau = 0.0;   // s; >0 evolves the filtered profile
    double detection_window = 1.0;
    int threads = 1;
};

struct CheckpointSample {
    double t_tunnel = 0.0;  // s, accumulated tunnel time
    double survival = 0.0;  // band-0 population
    double trapped = 0.0;   // detection observable
};

// Evolves prepare_initial(q) through all segments of the schedule, recording
// the observables at the end of every tunnel segment and at schedule end.
std::vector<CheckpointSample> run_schedule(double q, const Schedule& schedule,
                                           const LatticeParams& params,
                                           const EvolutionConfig& config,
                                           const RunSettings& settings);

// (total tunneling time, survival) samples; the central observable.
struct SurvivalCurve {
    std::vector<double> t_tunnel;   // s
    std::vector<double> survival;   // renormalized to the t_tunnel = 0 point
    std::vector<double> raw;        // ensemble average before renormalization
    std::vector<double> detection;  // renormalized detection observable
    double normalization = 1.0;     // raw value at t_tunnel = 0
    double detection_normalization = 1.0;
    double max_norm_error = 0.0;    // max |norm - 1| over the ensemble
    std::string label;
    int n_ensemble = 0;
};

// One family of schedules sharing all parameters except the total tunneling
// time.
struct FamilySpec {
    enum class Kind { uninterrupted, interrupted };

    Kind kind = Kind::uninterrupted;
    double a_trans = 0.0, a_tunnel = 0.0, a_interr = 0.0;  // m/s^2
    double t_segment = 0.0, t_interr = 0.0;                // s, interrupted only
    std::vector<double> t_tunnel_list;                     // s, uninterrupted only
    int n_cycles_max = 0;                                  // interrupted only
    double v0_vrec = 35.0, v_final_vrec = 75.0;
    std::string label;

    std::vector<double> times() const;  // sorted unique curve abscissae
    Schedule schedule_for(double t_tunnel, const LatticeParams& params) const;
};

// Ensemble-averaged decay curve for the family, sharing the transport prefix
// and the interrupted cycle chain across curve points.
SurvivalCurve survival_curve(const Ensemble& ensemble, const FamilySpec& family,
                             const LatticeParams& params, const EvolutionConfig& config,
                             const RunSettings& settings);

// Generic variant running one independent schedule per requested time.
SurvivalCurve survival_curve(const Ensemble& ensemble,
                             const std::function<Schedule(double)>& schedule_for,
                             const std::vector<double>& t_tunnel_list,
                             const LatticeParams& params, const EvolutionConfig& config,
                             const RunSettings& settings);

// One curve per interruption duration, same tunnel segmentation.
std::vector<SurvivalCurve> interruption_sweep(const Ensemble& ensemble,
                                              const FamilySpec& base,
                                              const std::vector<double>& t_interr_list,
                                              const LatticeParams& params,
                                              const EvolutionConfig& config,
                                              const RunSettings& settings);

}  // namespace zenosim
