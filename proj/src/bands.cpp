#include "zenosim/bands.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace zenosim {

Eigen::MatrixXd build_periodic_hamiltonian(double q, double depth_dimless, int N) {
    if (N < 1)
        throw InvalidParameterError("build_periodic_hamiltonian: N must be >= 1");
    if (!(depth_dimless >= 0.0))
        throw InvalidParameterError("build_periodic_hamiltonian: depth must be >= 0");

    const int size = 2 * N + 1;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) {
        const double p = q + 2.0 * (i - N);
        H(i, i) = p * p;
        if (i + 1 < size) {
            H(i, i + 1) = 0.5 * depth_dimless;
            H(i + 1, i) = 0.5 * depth_dimless;
        }
    }
    return H;
}

BandSolution solve_bands(double q, double depth_dimless, int N) {
    const int size = 2 * N + 1;
    Eigen::VectorXd diag(size);
    Eigen::VectorXd sub(size - 1);
    for (int i = 0; i < size; ++i) {
        const double p = q + 2.0 * (i - N);
        diag(i) = p * p;
    }
    sub.setConstant(0.5 * depth_dimless);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw NumericalError("solve_bands: eigensolver failed to converge at q=" +
                             std::to_string(q));

    BandSolution sol;
    sol.q = q;
    sol.N = N;
    sol.energies = solver.eigenvalues();
    sol.vectors = solver.eigenvectors();

    // Deterministic order and sign: exact eigenvalue ties (free particle)
    // broken by ascending ladder index of the dominant component, and each
    // vector's dominant component made positive.
    std::vector<int> order(size);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> dominant(size);
    for (int b = 0; b < size; ++b) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < size; ++i) {
            const double a = std::abs(sol.vectors(i, b));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        dominant[b] = arg;
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (sol.energies(a) != sol.energies(b)) return sol.energies(a) < sol.energies(b);
        return dominant[a] < dominant[b];
    });

    BandSolution out;
    out.q = q;
    out.N = N;
    out.energies.resize(size);
    out.vectors.resize(size, size);
    for (int b = 0; b < size; ++b) {
        out.energies(b) = sol.energies(order[b]);
        Eigen::VectorXd v = sol.vectors.col(order[b]);
        if (v(dominant[order[b]]) < 0.0) v = -v;
        out.vectors.col(b) = v;
    }
    return out;
}

double band_population(const LadderState& state, int band, const BandSolution& solution) {
    const int size = 2 * solution.N + 1;
    if (band < 0 || band >= size)
        throw InvalidParameterError("band_population: band index out of range");
    if (solution.N > state.N)
        throw DimensionError("band_population: solution basis exceeds state ladder");
    if (std::abs(fold_quasimomentum(solution.q) - state.folded_q()) > 1e-9)
        throw InvalidParameterError(
            "band_population: solution and state quasimomenta differ");

    const long center = state.center_site();
    std::complex<double> overlap(0.0, 0.0);
    for (int m = -solution.N; m <= solution.N; ++m) {
        const long n = center + m;
        if (n < -state.N || n > state.N) continue;
        overlap += solution.vectors(m + solution.N, band) *
                   state.amps[static_cast<size_t>(n + state.N)];
    }
    return std::norm(overlap);
}

int choose_basis_size(double depth_dimless, double max_accel_dimless, double tolerance) {
    if (!(depth_dimless >= 0.0) || !(max_accel_dimless > 0.0) || !(tolerance > 0.0))
        throw InvalidParameterError("choose_basis_size: inputs must be positive");

    constexpr int kFloor = 8;
    constexpr int kCap = 128;
    const double probes[] = {0.0, 0.5, -0.5, 1.0};

    for (int N = kFloor; N <= kCap; N += 2) {
        double worst = 0.0;
        for (double q : probes) {
            const BandSolution a = solve_bands(q, depth_dimless, N);
            const BandSolution b = solve_bands(q, depth_dimless, N + 2);
            worst = std::max(worst, std::abs(a.energies(0) - b.energies(0)));
            worst = std::max(worst, std::abs(a.energies(1) - b.energies(1)));
        }
        if (worst < tolerance) return N;
    }
    throw NumericalError("choose_basis_size: no convergence below N=128");
}

}  // namespace zenosim
