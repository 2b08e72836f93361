#pragma once

#include <Eigen/Dense>

#include "zenosim/errors.hpp"
#include "zenosim/state.hpp"

namespace zenosim {

// Instantaneous Bloch band solution of the periodic part of the Hamiltonian
// at one quasimomentum, on the plane-wave ladder n in [-N, N].
struct BandSolution {
    double q = 0.0;
    int N = 0;
    Eigen::VectorXd energies;  // E_rec units, ascending
    Eigen::MatrixXd vectors;   // column b = band-b eigenvector over sites
};

// H(q) on the ladder: diagonal (q + 2n)^2 (kinetic, E_rec units), nearest
// neighbours coupled by depth/2 (the two Fourier components of the cosine
// each carry V0/2). q is used as given, not folded, so translation
// properties can be checked at the matrix level.
Eigen::MatrixXd build_periodic_hamiltonian(double q, double depth_dimless, int N);

BandSolution solve_bands(double q, double depth_dimless, int N);

// |<band eigenvector, state>|^2. The state may have a wider ladder than the
// solution; the eigenvector is embedded at the state's center site so that
// the two bases carry the same kinetic diagonal. Requires the solution to be
// computed at the state's folded drifted quasimomentum.
double band_population(const LadderState& state, int band, const BandSolution& solution);

// Smallest N (floor 8, step 2) for which band-0 and band-1 energies at
// q in {0, +-0.5, 1} move by less than tolerance when N -> N+2.
int choose_basis_size(double depth_dimless, double max_accel_dimless, double tolerance);

}  // namespace zenosim
