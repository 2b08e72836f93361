#include <CLI11.hpp>
#include <array>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "zenosim/analysis.hpp"
#include "zenosim/config.hpp"
#include "zenosim/csv.hpp"
#include "zenosim/presets.hpp"

namespace {

using namespace zenosim;

constexpr const char* kVersion = "1.0";

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string preset;
    int threads = 0;
};

RunConfig resolve_config(const CliOptions& opt) {
    RunConfig cfg;
    if (!opt.preset.empty()) cfg = parse_config_text(preset_text(opt.preset), cfg);
    cfg = load_config_file(opt.config_path, cfg);
    if (!opt.out_dir.empty()) cfg.directory = opt.out_dir;
    return cfg;
}

int thread_count(const CliOptions& opt) {
    if (opt.threads > 0) return opt.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<std::string> base_metadata(const std::string& command, const RunConfig& cfg) {
    std::vector<std::string> lines;
    lines.push_back(std::string("zenosim ") + kVersion);
    lines.push_back("command = " + command);
    std::stringstream ss(to_config_text(cfg));
    std::string line;
    while (std::getline(ss, line)) lines.push_back(line);
    return lines;
}

void append_curve_metadata(std::vector<std::string>& meta, const SurvivalCurve& curve) {
    meta.push_back("label = " + curve.label);
    meta.push_back("n_ensemble = " + std::to_string(curve.n_ensemble));
    meta.push_back("normalization_raw = " + format_g12(curve.normalization));
    meta.push_back("max_norm_error = " + format_g12(curve.max_norm_error));
}

void append_fits(std::vector<std::string>& meta, const SurvivalCurve& curve,
                 const LatticeParams& p, double a_tunnel) {
    const double tau_b = bloch_period(p, a_tunnel);
    meta.push_back("tau_b_tunnel_us = " + format_g12(tau_b * 1e6));
    try {
        const DecayFit fit = fit_exponential_tail(curve, 3.0 * tau_b);
        meta.push_back("fit_t_min_us = " + format_g12(fit.t_min_fit * 1e6));
        meta.push_back("fit_rate_per_s = " + format_g12(fit.rate));
        meta.push_back("fit_amplitude = " + format_g12(fit.amplitude));
        meta.push_back("fit_residual_rms = " + format_g12(fit.residual_rms));
        if (fit.excluded_points > 0)
            meta.push_back("fit_excluded_points = " + std::to_string(fit.excluded_points));
    } catch (const FitError& e) {
        meta.push_back(std::string("fit_note = ") + e.what());
    }
    try {
        meta.push_back("short_time_exponent = " +
                       format_g12(short_time_exponent(curve, tau_b)));
    } catch (const FitError&) {
        // not enough short-time points on this grid
    }
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.directory);
    return (std::filesystem::path(cfg.directory) / name).string();
}

FamilySpec uninterrupted_family(const RunConfig& cfg) {
    FamilySpec f;
    f.kind = FamilySpec::Kind::uninterrupted;
    f.a_trans = require_key(cfg.a_trans, "schedule.a_trans");
    f.a_tunnel = require_key(cfg.a_tunnel, "schedule.a_tunnel");
    f.a_interr = f.a_trans;
    f.v0_vrec = cfg.v0_vrec;
    f.v_final_vrec = cfg.v_final_vrec;
    if (cfg.t_tunnel_list_us.empty())
        throw ConfigError("config: missing required key 'output.t_tunnel_list_us'");
    for (double t : cfg.t_tunnel_list_us) f.t_tunnel_list.push_back(t * 1e-6);
    f.label = "uninterrupted";
    return f;
}

FamilySpec interrupted_family(const RunConfig& cfg, const std::string& label) {
    FamilySpec f;
    f.kind = FamilySpec::Kind::interrupted;
    f.a_trans = require_key(cfg.a_trans, "schedule.a_trans");
    f.a_tunnel = require_key(cfg.a_tunnel, "schedule.a_tunnel");
    f.a_interr = require_key(cfg.a_interr, "schedule.a_interr");
    f.t_segment = require_key(cfg.t_segment_us, "schedule.t_segment_us") * 1e-6;
    f.t_interr = require_key(cfg.t_interr_us, "schedule.t_interr_us") * 1e-6;
    f.v0_vrec = cfg.v0_vrec;
    f.v_final_vrec = cfg.v_final_vrec;
    if (cfg.t_tunnel_list_us.empty())
        throw ConfigError("config: missing required key 'output.t_tunnel_list_us'");
    double t_max = 0.0;
    for (double t : cfg.t_tunnel_list_us) t_max = std::max(t_max, t * 1e-6);
    if (!(f.t_segment > 0.0))
        throw ConfigError("config: schedule.t_segment_us must be positive");
    f.n_cycles_max = static_cast<int>(t_max / f.t_segment + 1e-9);
    f.label = label;
    return f;
}

void write_schedule_table(const RunConfig& cfg, const std::string& name,
                          const FamilySpec& f, const LatticeParams& p) {
    const std::vector<double> times = f.times();
    const Schedule s = f.schedule_for(times.back(), p);
    write_file(out_path(cfg, name), schedule_table(s));
}

int cmd_bands(const CliOptions& opt) {
    const RunConfig cfg = resolve_config(opt);
    const LatticeParams p = lattice_params(cfg);
    const int N = resolve_basis_N(cfg, p);

    std::vector<double> qs;
    std::vector<std::array<double, 3>> rows;
    for (int i = 0; i < cfg.bands_q_count; ++i) {
        const double q = -1.0 + 2.0 * i / (cfg.bands_q_count - 1);
        const BandSolution sol = solve_bands(q, p.depth_dimless, N);
        qs.push_back(q);
        rows.push_back({sol.energies(0), sol.energies(1), sol.energies(2)});
    }
    auto meta = base_metadata("bands", cfg);
    meta.push_back("resolved_basis_N = " + std::to_string(N));
    meta.push_back("depth_dimless = " + format_g12(p.depth_dimless));
    write_file(out_path(cfg, "bands.csv"), bands_csv(qs, rows, meta));
    std::cout << "wrote " << out_path(cfg, "bands.csv") << "\n";
    return 0;
}

int cmd_decay(const CliOptions& opt) {
    const RunConfig cfg = resolve_config(opt);
    const LatticeParams p = lattice_params(cfg);
    const EvolutionConfig ec = evolution_config(cfg);
    const RunSettings rs = run_settings(cfg, p, thread_count(opt));
    const FamilySpec family = uninterrupted_family(cfg);

    const SurvivalCurve curve =
        survival_curve(make_uniform_ensemble(cfg.ensemble_count), family, p, ec, rs);

    auto meta = base_metadata("decay", cfg);
    meta.push_back("resolved_basis_N = " + std::to_string(rs.band_basis_N));
    append_curve_metadata(meta, curve);
    append_fits(meta, curve, p, family.a_tunnel);
    write_file(out_path(cfg, "decay.csv"), curve_csv(curve, meta));
    write_schedule_table(cfg, "decay_schedule.txt", family, p);
    std::cout << "wrote " << out_path(cfg, "decay.csv") << "\n";
    return 0;
}

int run_paired(const CliOptions& opt, const std::string& command) {
    const RunConfig cfg = resolve_config(opt);
    const LatticeParams p = lattice_params(cfg);
    const EvolutionConfig ec = evolution_config(cfg);
    const RunSettings rs = run_settings(cfg, p, thread_count(opt));
    const Ensemble ensemble = make_uniform_ensemble(cfg.ensemble_count);

    FamilySpec inter = interrupted_family(cfg, command);
    FamilySpec ref = inter;
    ref.kind = FamilySpec::Kind::uninterrupted;
    ref.label = "uninterrupted";
    ref.t_tunnel_list = inter.times();  // shared total-tunnel-time grid

    const SurvivalCurve ci = survival_curve(ensemble, inter, p, ec, rs);
    const SurvivalCurve cu = survival_curve(ensemble, ref, p, ec, rs);

    for (const auto& pair :
         {std::make_pair(command + "_interrupted.csv", &ci),
          std::make_pair(command + "_uninterrupted.csv", &cu)}) {
        auto meta = base_metadata(command, cfg);
        meta.push_back("resolved_basis_N = " + std::to_string(rs.band_basis_N));
        meta.push_back("tau_b_interr_us = " +
                       format_g12(bloch_period(p, inter.a_interr) * 1e6));
        append_curve_metadata(meta, *pair.second);
        append_fits(meta, *pair.second, p, inter.a_tunnel);
        write_file(out_path(cfg, pair.first), curve_csv(*pair.second, meta));
        std::cout << "wrote " << out_path(cfg, pair.first) << "\n";
    }
    write_schedule_table(cfg, command + "_schedule.txt", inter, p);
    return 0;
}

int cmd_sweep(const CliOptions& opt) {
    const RunConfig cfg = resolve_config(opt);
    const LatticeParams p = lattice_params(cfg);
    const EvolutionConfig ec = evolution_config(cfg);
    const RunSettings rs = run_settings(cfg, p, thread_count(opt));
    if (cfg.t_interr_list_us.empty())
        throw ConfigError("config: missing required key 'schedule.t_interr_list_us'");

    FamilySpec base = interrupted_family(cfg, "sweep");
    std::vector<double> t_interr;
    for (double t : cfg.t_interr_list_us) t_interr.push_back(t * 1e-6);

    const std::vector<SurvivalCurve> curves = interruption_sweep(
        make_uniform_ensemble(cfg.ensemble_count), base, t_interr, p, ec, rs);

    auto meta = base_metadata("sweep", cfg);
    meta.push_back("resolved_basis_N = " + std::to_string(rs.band_basis_N));
    meta.push_back("tau_b_interr_us = " + format_g12(bloch_period(p, base.a_interr) * 1e6));
    write_file(out_path(cfg, "sweep.csv"), sweep_csv(curves, meta));
    write_schedule_table(cfg, "sweep_schedule.txt", base, p);
    std::cout << "wrote " << out_path(cfg, "sweep.csv") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tunneling decay of cold atoms in an accelerated optical lattice"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string command;
    for (const char* name : {"bands", "decay", "zeno", "antizeno", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opt.config_path, "config file (key = value)")
            ->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides config)");
        sub->add_option("--threads", opt.threads, "worker threads (default: hardware)");
        sub->add_option("--preset", opt.preset,
                        "built-in parameter set the config overrides")
            ->check(CLI::IsMember(preset_names()));
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (command == "bands") return cmd_bands(opt);
        if (command == "decay") return cmd_decay(opt);
        if (command == "zeno") return run_paired(opt, "zeno");
        if (command == "antizeno") return run_paired(opt, "antizeno");
        if (command == "sweep") return cmd_sweep(opt);
        std::cerr << "zenosim: no command\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "zenosim: " << e.what() << "\n";
        return 2;
    } catch (const InvalidParameterError& e) {
        std::cerr << "zenosim: " << e.what() << "\n";
        return 2;
    } catch (const InvalidScheduleError& e) {
        std::cerr << "zenosim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "zenosim: " << e.what() << "\n";
        return 3;
    }
}
