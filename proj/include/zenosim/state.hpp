#pragma once

#include <complex>
#include <vector>

namespace zenosim {

// Folds a quasimomentum into the first Brillouin zone [-1, 1), units of
// hbar*k_L.
double fold_quasimomentum(double q);

// Quasimomentum value guaranteed to live in [-1, 1).
struct QuasiMomentum {
    double q = 0.0;

    QuasiMomentum() = default;
    explicit QuasiMomentum(double raw) : q(fold_quasimomentum(raw)) {}
};

// Complex amplitudes on the truncated plane-wave ladder at one initial
// quasimomentum. Site n (n in [-N, N]) is the plane wave with comoving-frame
// momentum (q0 + 2n) hbar k_L; under an acceleration profile the kinetic
// diagonal is (q0 + drift + 2n)^2 in E_rec units, with drift the accumulated
// velocity gain in units of v_rec. Time t is dimensionless (hbar/E_rec).
struct LadderState {
    double q0 = 0.0;
    double drift = 0.0;
    double t = 0.0;
    int N = 0;
    std::vector<std::complex<double>> amps;  // size 2N+1, index n + N

    LadderState() = default;
    LadderState(double q0_, int N_)
        : q0(q0_), N(N_), amps(2 * static_cast<size_t>(N_) + 1) {}

    double drifted_q() const { return q0 + drift; }
    double folded_q() const { return fold_quasimomentum(q0 + drift); }

    // Ladder site n* whose drifted momentum q0 + drift + 2n* lies in [-1, 1);
    // the instantaneous band-0 state is centered there.
    long center_site() const;

    double norm() const;

    std::complex<double>& amp(int n) { return amps[static_cast<size_t>(n + N)]; }
    const std::complex<double>& amp(int n) const {
        return amps[static_cast<size_t>(n + N)];
    }
};

}  // namespace zenosim
