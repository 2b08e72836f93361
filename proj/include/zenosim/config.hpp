#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zenosim/dynamics.hpp"
#include "zenosim/experiment.hpp"
#include "zenosim/params.hpp"

namespace zenosim {

// Flat sectioned key=value configuration with a strict schema: unknown
// sections or keys are errors, as are malformed values. Sections: [atom],
// [lattice], [schedule], [numerics], [output].
struct RunConfig {
    // atom
    double mass_amu = consts::sodium23_amu;
    double wavelength_nm = 589.0;
    // lattice
    std::optional<double> depth_khz;
    // schedule
    std::optional<double> a_trans;   // m/s^2
    std::optional<double> a_tunnel;  // m/s^2
    std::optional<double> a_interr;  // m/s^2
    std::optional<double> t_segment_us;
    std::optional<double> t_interr_us;
    double v0_vrec = 35.0;
    double v_final_vrec = 75.0;
    std::vector<double> t_interr_list_us;  // sweep only
    // numerics
    int basis_N = 0;  // 0 = auto (convergence scan)
    int substeps_per_bloch = 2000;
    int substeps_per_bloch_slow = 0;  // 0 = same as substeps_per_bloch
    int ensemble_count = 64;
    double response_tau_us = 0.0;
    std::string stepper = "midpoint";  // or "cf4"
    std::string window = "auto";       // "auto", "full" or an integer
    // output
    std::string directory = "out";
    std::vector<double> t_tunnel_list_us;
    int bands_q_count = 201;

    bool operator==(const RunConfig&) const = default;
};

// Parses text over `base` (values not set in the text keep the base values).
RunConfig parse_config_text(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

// Emits a complete config file reproducing `cfg` when re-parsed.
std::string to_config_text(const RunConfig& cfg);

// Helpers resolving config values into simulation objects. All throw
// ConfigError naming the offending key.
double require_key(const std::optional<double>& v, const char* key);
LatticeParams lattice_params(const RunConfig& cfg);
EvolutionConfig evolution_config(const RunConfig& cfg);
int resolve_basis_N(const RunConfig& cfg, const LatticeParams& p);
RunSettings run_settings(const RunConfig& cfg, const LatticeParams& p, int threads);

}  // namespace zenosim
