#pragma once

#include <Eigen/Dense>

#include "zenosim/bands.hpp"
#include "zenosim/params.hpp"
#include "zenosim/state.hpp"

namespace zenosim {

// Integrator controls for one segment of constant target acceleration.
// The step size is min(dt_max, tau_b / substeps_per_bloch) with tau_b the
// instantaneous Bloch period, so fast-acceleration segments are resolved.
// window_halfwidth > 0 evolves only the tridiagonal block of that halfwidth
// around the instantaneous band center exactly and the remaining occupied
// sites by their (exact) kinetic phases; 0 evolves the full ladder. Both are
// unitary; the window is a speed optimization whose accuracy is covered by
// the convergence tests.
struct EvolutionConfig {
    enum class Stepper { MidpointExponential, CommutatorFree4 };

    Stepper stepper = Stepper::MidpointExponential;
    double dt_max = 1e30;            // dimensionless ceiling
    int substeps_per_bloch = 2000;   // >= 100
    int window_halfwidth = 0;        // 0 = full ladder
};

// Periodic Hamiltonian at the drifted quasimomentum; the acceleration enters
// the dynamics only through the time dependence of the drift, so `a_si` does
// not appear in the matrix.
Eigen::MatrixXd instantaneous_hamiltonian(const LadderState& state, double a_si,
                                          const LatticeParams& params);

// Advances the state through one constant-acceleration segment by solving
// i dpsi/dtau = H(tau) psi on the ladder. Unitary per substep; drift advances
// by a * duration / v_rec.
LadderState evolve_segment(LadderState state, double a_si, double duration_si,
                           const EvolutionConfig& config, const LatticeParams& params);

// Population in the instantaneous band-0 eigenstate at the folded drifted
// quasimomentum. band_basis_N = 0 picks min(state.N, 16).
double survival_observable(const LadderState& state, const LatticeParams& params,
                           int band_basis_N = 0);

}  // namespace zenosim
