#include "zenosim/state.hpp"

#include <cmath>

namespace zenosim {

double fold_quasimomentum(double q) {
    double folded = q - 2.0 * std::floor((q + 1.0) / 2.0);
    // Guard against the representable edge case folded == 1 from rounding.
    if (folded >= 1.0) folded -= 2.0;
    return folded;
}

long LadderState::center_site() const {
    return -static_cast<long>(std::floor((q0 + drift + 1.0) / 2.0));
}

double LadderState::norm() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

}  // namespace zenosim
