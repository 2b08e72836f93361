#pragma once

#include <array>
#include <string>
#include <vector>

#include "zenosim/experiment.hpp"

namespace zenosim {

// All floats are emitted with 12 significant digits.
std::string format_g12(double v);

// Lines prefixed with "# ".
std::string metadata_block(const std::vector<std::string>& lines);

// Columns: t_tunnel_us, survival, raw_survival, n_ensemble.
std::string curve_csv(const SurvivalCurve& curve,
                      const std::vector<std::string>& metadata);

// One labeled column group (survival, raw_survival) per curve on a shared
// time grid.
std::string sweep_csv(const std::vector<SurvivalCurve>& curves,
                      const std::vector<std::string>& metadata);

// Columns: q, E_band0, E_band1, E_band2 (E_rec units).
std::string bands_csv(const std::vector<double>& q,
                      const std::vector<std::array<double, 3>>& energies,
                      const std::vector<std::string>& metadata);

void write_file(const std::string& path, const std::string& content);

}  // namespace zenosim
