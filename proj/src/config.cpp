#include "zenosim/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace zenosim {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& v, const std::string& key) {
    char* end = nullptr;
    const std::string t = trim(v);
    const double x = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw ConfigError("config: key '" + key + "' has malformed number '" + v + "'");
    return x;
}

int parse_int(const std::string& v, const std::string& key) {
    const double x = parse_double(v, key);
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw ConfigError("config: key '" + key + "' must be an integer");
    return i;
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(v);
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item, key));
    if (out.empty())
        throw ConfigError("config: key '" + key + "' has an empty list");
    return out;
}

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"atom", {"mass_amu", "wavelength_nm"}},
        {"lattice", {"depth_khz"}},
        {"schedule",
         {"a_trans", "a_tunnel", "a_interr", "t_segment_us", "t_interr_us", "v0_vrec",
          "v_final_vrec", "t_interr_list_us"}},
        {"numerics",
         {"basis_N", "substeps_per_bloch", "substeps_per_bloch_slow", "ensemble_count",
          "response_tau_us", "stepper", "window"}},
        {"output", {"directory", "t_tunnel_list_us", "bands_q_count"}},
    };
    return s;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, RunConfig cfg) {
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (schema().find(section) == schema().end())
                throw ConfigError("config: unknown section '" + section + "'");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " +
                              std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config: key '" + key + "' outside any section");
        const auto& keys = schema().at(section);
        if (keys.find(key) == keys.end())
            throw ConfigError("config: unknown key '" + section + "." + key + "'");
        const std::string full = section + "." + key;

        if (full == "atom.mass_amu") cfg.mass_amu = parse_double(value, full);
        else if (full == "atom.wavelength_nm") cfg.wavelength_nm = parse_double(value, full);
        else if (full == "lattice.depth_khz") cfg.depth_khz = parse_double(value, full);
        else if (full == "schedule.a_trans") cfg.a_trans = parse_double(value, full);
        else if (full == "schedule.a_tunnel") cfg.a_tunnel = parse_double(value, full);
        else if (full == "schedule.a_interr") cfg.a_interr = parse_double(value, full);
        else if (full == "schedule.t_segment_us") cfg.t_segment_us = parse_double(value, full);
        else if (full == "schedule.t_interr_us") cfg.t_interr_us = parse_double(value, full);
        else if (full == "schedule.v0_vrec") cfg.v0_vrec = parse_double(value, full);
        else if (full == "schedule.v_final_vrec") cfg.v_final_vrec = parse_double(value, full);
        else if (full == "schedule.t_interr_list_us") cfg.t_interr_list_us = parse_list(value, full);
        else if (full == "numerics.basis_N") {
            if (trim(value) == "auto") cfg.basis_N = 0;
            else {
                cfg.basis_N = parse_int(value, full);
                if (cfg.basis_N < 1)
                    throw ConfigError("config: numerics.basis_N must be 'auto' or >= 1");
            }
        } else if (full == "numerics.substeps_per_bloch") cfg.substeps_per_bloch = parse_int(value, full);
        else if (full == "numerics.substeps_per_bloch_slow") cfg.substeps_per_bloch_slow = parse_int(value, full);
        else if (full == "numerics.ensemble_count") cfg.ensemble_count = parse_int(value, full);
        else if (full == "numerics.response_tau_us") cfg.response_tau_us = parse_double(value, full);
        else if (full == "numerics.stepper") {
            const std::string v = trim(value);
            if (v != "midpoint" && v != "cf4")
                throw ConfigError("config: numerics.stepper must be 'midpoint' or 'cf4'");
            cfg.stepper = v;
        } else if (full == "numerics.window") {
            const std::string v = trim(value);
            if (v != "auto" && v != "full") {
                const int w = parse_int(v, full);
                if (w < 1) throw ConfigError("config: numerics.window must be >= 1, 'auto' or 'full'");
            }
            cfg.window = v;
        } else if (full == "output.directory") cfg.directory = value;
        else if (full == "output.t_tunnel_list_us") cfg.t_tunnel_list_us = parse_list(value, full);
        else if (full == "output.bands_q_count") {
            cfg.bands_q_count = parse_int(value, full);
            if (cfg.bands_q_count < 2)
                throw ConfigError("config: output.bands_q_count must be >= 2");
        }
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), std::move(base));
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out;
}

}  // namespace

std::string to_config_text(const RunConfig& cfg) {
    std::string o;
    o += "[atom]\n";
    o += "mass_amu = " + fmt(cfg.mass_amu) + "\n";
    o += "wavelength_nm = " + fmt(cfg.wavelength_nm) + "\n";
    o += "[lattice]\n";
    if (cfg.depth_khz) o += "depth_khz = " + fmt(*cfg.depth_khz) + "\n";
    o += "[schedule]\n";
    if (cfg.a_trans) o += "a_trans = " + fmt(*cfg.a_trans) + "\n";
    if (cfg.a_tunnel) o += "a_tunnel = " + fmt(*cfg.a_tunnel) + "\n";
    if (cfg.a_interr) o += "a_interr = " + fmt(*cfg.a_interr) + "\n";
    if (cfg.t_segment_us) o += "t_segment_us = " + fmt(*cfg.t_segment_us) + "\n";
    if (cfg.t_interr_us) o += "t_interr_us = " + fmt(*cfg.t_interr_us) + "\n";
    o += "v0_vrec = " + fmt(cfg.v0_vrec) + "\n";
    o += "v_final_vrec = " + fmt(cfg.v_final_vrec) + "\n";
    if (!cfg.t_interr_list_us.empty())
        o += "t_interr_list_us = " + fmt_list(cfg.t_interr_list_us) + "\n";
    o += "[numerics]\n";
    o += "basis_N = " + (cfg.basis_N ? std::to_string(cfg.basis_N) : std::string("auto")) + "\n";
    o += "substeps_per_bloch = " + std::to_string(cfg.substeps_per_bloch) + "\n";
    o += "substeps_per_bloch_slow = " + std::to_string(cfg.substeps_per_bloch_slow) + "\n";
    o += "ensemble_count = " + std::to_string(cfg.ensemble_count) + "\n";
    o += "response_tau_us = " + fmt(cfg.response_tau_us) + "\n";
    o += "stepper = " + cfg.stepper + "\n";
    o += "window = " + cfg.window + "\n";
    o += "[output]\n";
    o += "directory = " + cfg.directory + "\n";
    if (!cfg.t_tunnel_list_us.empty())
        o += "t_tunnel_list_us = " + fmt_list(cfg.t_tunnel_list_us) + "\n";
    o += "bands_q_count = " + std::to_string(cfg.bands_q_count) + "\n";
    return o;
}

double require_key(const std::optional<double>& v, const char* key) {
    if (!v) throw ConfigError(std::string("config: missing required key '") + key + "'");
    return *v;
}

LatticeParams lattice_params(const RunConfig& cfg) {
    if (!(cfg.mass_amu > 0.0))
        throw ConfigError("config: atom.mass_amu must be positive");
    if (!(cfg.wavelength_nm > 0.0))
        throw ConfigError("config: atom.wavelength_nm must be positive");
    const double depth = require_key(cfg.depth_khz, "lattice.depth_khz");
    if (!(depth >= 0.0)) throw ConfigError("config: lattice.depth_khz must be >= 0");
    return derive_params(cfg.mass_amu * consts::amu, cfg.wavelength_nm * 1e-9,
                         depth * 1e3);
}

EvolutionConfig evolution_config(const RunConfig& cfg) {
    EvolutionConfig ec;
    ec.stepper = cfg.stepper == "cf4" ? EvolutionConfig::Stepper::CommutatorFree4
                                      : EvolutionConfig::Stepper::MidpointExponential;
    if (cfg.substeps_per_bloch < 100)
        throw ConfigError("config: numerics.substeps_per_bloch must be >= 100");
    ec.substeps_per_bloch = cfg.substeps_per_bloch;
    return ec;
}

int resolve_basis_N(const RunConfig& cfg, const LatticeParams& p) {
    if (cfg.basis_N > 0) return cfg.basis_N;
    const UnitSystem us = UnitSystem::from(p);
    double a_max = 1.0;
    for (const auto& a : {cfg.a_trans, cfg.a_tunnel, cfg.a_interr})
        if (a) a_max = std::max(a_max, *a);
    return choose_basis_size(p.depth_dimless, us.accel_to_dimless(a_max), 1e-10);
}

RunSettings run_settings(const RunConfig& cfg, const LatticeParams& p, int threads) {
    RunSettings rs;
    rs.band_basis_N = resolve_basis_N(cfg, p);
    if (cfg.window == "auto") rs.window = -1;
    else if (cfg.window == "full") rs.window = 0;
    else {
        rs.window = parse_int(cfg.window, "numerics.window");
        if (rs.window < 1)
            throw ConfigError("config: numerics.window must be >= 1, 'auto' or 'full'");
    }
    if (cfg.substeps_per_bloch_slow < 0 ||
        (cfg.substeps_per_bloch_slow > 0 && cfg.substeps_per_bloch_slow < 100))
        throw ConfigError("config: numerics.substeps_per_bloch_slow must be 0 or >= 100");
    rs.substeps_slow = cfg.substeps_per_bloch_slow;
    if (!(cfg.response_tau_us >= 0.0))
        throw ConfigError("config: numerics.response_tau_us must be >= 0");
    rs.response_tau = cfg.response_tau_us * 1e-6;
    rs.threads = threads;
    return rs;
}

}  // namespace zenosim
