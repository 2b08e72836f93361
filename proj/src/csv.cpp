#include "zenosim/csv.hpp"

#include <cstdio>
#include <fstream>

#include "zenosim/errors.hpp"

namespace zenosim {

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string metadata_block(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += "# " + l + "\n";
    return out;
}

std::string curve_csv(const SurvivalCurve& curve,
                      const std::vector<std::string>& metadata) {
    std::string out = metadata_block(metadata);
    out += "t_tunnel_us,survival,raw_survival,n_ensemble\n";
    for (size_t i = 0; i < curve.t_tunnel.size(); ++i) {
        out += format_g12(curve.t_tunnel[i] * 1e6) + "," + format_g12(curve.survival[i]) +
               "," + format_g12(curve.raw[i]) + "," + std::to_string(curve.n_ensemble) +
               "\n";
    }
    return out;
}

std::string sweep_csv(const std::vector<SurvivalCurve>& curves,
                      const std::vector<std::string>& metadata) {
    if (curves.empty()) throw InvalidParameterError("sweep_csv: no curves");
    const size_t rows = curves.front().t_tunnel.size();
    for (const auto& c : curves)
        if (c.t_tunnel.size() != rows)
            throw DimensionError("sweep_csv: curves disagree on the time grid");

    std::string out = metadata_block(metadata);
    out += "t_tunnel_us";
    for (const auto& c : curves)
        out += ",survival_" + c.label + ",raw_survival_" + c.label;
    out += "\n";
    for (size_t i = 0; i < rows; ++i) {
        out += format_g12(curves.front().t_tunnel[i] * 1e6);
        for (const auto& c : curves)
            out += "," + format_g12(c.survival[i]) + "," + format_g12(c.raw[i]);
        out += "\n";
    }
    return out;
}

std::string bands_csv(const std::vector<double>& q,
                      const std::vector<std::array<double, 3>>& energies,
                      const std::vector<std::string>& metadata) {
    if (q.size() != energies.size())
        throw DimensionError("bands_csv: q and energy rows disagree");
    std::string out = metadata_block(metadata);
    out += "q,E_band0,E_band1,E_band2\n";
    for (size_t i = 0; i < q.size(); ++i) {
        out += format_g12(q[i]);
        for (double e : energies[i]) out += "," + format_g12(e);
        out += "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out.good()) throw Error("write failed for '" + path + "'");
}

}  // namespace zenosim
