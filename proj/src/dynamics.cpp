#include "zenosim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace zenosim {

namespace {

using cplx = std::complex<double>;

constexpr double kSqrt3 = 1.7320508075688772;
// Commutator-free 4th-order coefficients (two exponentials per step, H
// sampled at the Gauss nodes 1/2 -+ sqrt(3)/6 of the step).
constexpr double kCf4A1 = 0.25 + kSqrt3 / 6.0;
constexpr double kCf4A2 = 0.25 - kSqrt3 / 6.0;

// Chebyshev expansion of exp(-i*tau*H) on a spectral interval of fixed
// half-width `a`; the interval center floats per application. Coefficients
// are computed once per segment; the expansion is exact to machine precision
// once the Bessel tail drops below 1e-17.
struct ChebCoeffs {
    double a = 0.0;
    double tau = 0.0;
    std::vector<cplx> c;

    void init(double half_range, double tau_) {
        a = half_range;
        tau = tau_;
        const double z = a * tau;
        int order = static_cast<int>(z) + 12;
        while (order < 2048 && std::abs(std::cyl_bessel_j(order, z)) > 1e-17) ++order;
        if (order >= 2048)
            throw NumericalError("evolve_segment: chebyshev order exploded");
        c.resize(static_cast<size_t>(order) + 1);
        cplx ik(1.0, 0.0);
        const cplx minus_i(0.0, -1.0);
        for (int k = 0; k <= order; ++k) {
            c[static_cast<size_t>(k)] = (k == 0 ? 1.0 : 2.0) * ik * std::cyl_bessel_j(k, z);
            ik *= minus_i;
        }
    }
};

struct Workspace {
    std::vector<double> diag, diag2, dscale;
    std::vector<cplx> y0, y1, y2;
    // lazy per-site phase recurrence for sites outside the active block
    std::vector<cplx> p, u;
    std::vector<long> stamp;
    std::vector<int> resync;
};

// psi <- exp(-i * cc.tau * T(diag, off)) psi for the tridiagonal block of
// size m. The block's spectral interval must fit within half-width cc.a.
void apply_exp(const ChebCoeffs& cc, cplx* psi, const double* diag, double off, int m,
               Workspace& ws) {
    double dmin = diag[0], dmax = diag[0];
    for (int i = 1; i < m; ++i) {
        dmin = std::min(dmin, diag[i]);
        dmax = std::max(dmax, diag[i]);
    }
    dmin -= 2.0 * std::abs(off);
    dmax += 2.0 * std::abs(off);
    const double center = 0.5 * (dmin + dmax);
    const double inva = 1.0 / cc.a;
    const double oi = off * inva;

    ws.dscale.resize(static_cast<size_t>(m));
    ws.y0.assign(psi, psi + m);
    ws.y1.resize(static_cast<size_t>(m));
    ws.y2.resize(static_cast<size_t>(m));
    double* ds = ws.dscale.data();
    for (int i = 0; i < m; ++i) ds[i] = (diag[i] - center) * inva;

    auto mv = [&](const cplx* v, cplx* out) {
        if (m == 1) {
            out[0] = ds[0] * v[0];
            return;
        }
        out[0] = ds[0] * v[0] + oi * v[1];
        for (int i = 1; i + 1 < m; ++i)
            out[i] = ds[i] * v[i] + oi * (v[i - 1] + v[i + 1]);
        out[m - 1] = ds[m - 1] * v[m - 1] + oi * v[m - 2];
    };

    cplx* a0 = ws.y0.data();  // T_{k-2} psi
    cplx* a1 = ws.y1.data();  // T_{k-1} psi
    cplx* a2 = ws.y2.data();
    mv(a0, a1);
    for (int i = 0; i < m; ++i) psi[i] = cc.c[0] * a0[i] + cc.c[1] * a1[i];
    for (size_t k = 2; k < cc.c.size(); ++k) {
        mv(a1, a2);
        const cplx ck = cc.c[k];
        for (int i = 0; i < m; ++i) {
            a2[i] = 2.0 * a2[i] - a0[i];
            psi[i] += ck * a2[i];
        }
        std::swap(a0, a1);
        std::swap(a1, a2);
    }
    const cplx rot = std::polar(1.0, -center * cc.tau);
    for (int i = 0; i < m; ++i) psi[i] *= rot;
}

}  // namespace

Eigen::MatrixXd instantaneous_hamiltonian(const LadderState& state, double a_si,
                                          const LatticeParams& params) {
    (void)a_si;  // enters only through the drift's time dependence
    return build_periodic_hamiltonian(state.drifted_q(), params.depth_dimless, state.N);
}

LadderState evolve_segment(LadderState state, double a_si, double duration_si,
                           const EvolutionConfig& config, const LatticeParams& params) {
    if (!(config.dt_max > 0.0))
        throw InvalidParameterError("evolve_segment: dt_max must be positive");
    if (config.substeps_per_bloch < 100)
        throw InvalidParameterError("evolve_segment: substeps_per_bloch must be >= 100");
    if (config.window_halfwidth < 0)
        throw InvalidParameterError("evolve_segment: window_halfwidth must be >= 0");
    if (!(duration_si >= 0.0))
        throw InvalidParameterError("evolve_segment: duration must be >= 0");
    if (state.N < 1 || state.amps.size() != 2 * static_cast<size_t>(state.N) + 1)
        throw DimensionError("evolve_segment: inconsistent ladder");
    if (duration_si == 0.0) return state;

    const UnitSystem us = UnitSystem::from(params);
    const double alpha = us.accel_to_dimless(a_si);
    const double T = us.time_to_dimless(duration_si);
    const double depth = params.depth_dimless;
    const double off = 0.5 * depth;
    const int N = state.N;
    const int size = 2 * N + 1;
    const double q0 = state.q0;
    const double d0 = state.drift;

    double dt_target = config.dt_max;
    if (alpha != 0.0)
        dt_target = std::min(dt_target, 2.0 / std::abs(alpha) / config.substeps_per_bloch);
    const long steps = std::max<long>(1, static_cast<long>(std::ceil(T / dt_target - 1e-12)));
    const double dt = T / static_cast<double>(steps);
    if (state.t + dt == state.t)
        throw NumericalError("evolve_segment: step size underflow");

    const double norm0 = state.norm();
    cplx* amps = state.amps.data();

    int occ_lo = 0, occ_hi = size - 1;
    while (occ_lo < size && amps[occ_lo] == cplx(0.0, 0.0)) ++occ_lo;
    while (occ_hi >= 0 && amps[occ_hi] == cplx(0.0, 0.0)) --occ_hi;
    const bool empty = occ_lo > occ_hi;

    const int W = config.window_halfwidth;
    const bool windowed = W > 0 && 2 * W + 1 < size;

    // Per-segment spectral half-range bound (block interval center floats).
    double diag_hi;
    if (windowed) {
        const double xb = 2.0 * W + 2.0;
        diag_hi = xb * xb;
    } else {
        const double d1 = d0 + alpha * T;
        double xmax = 0.0;
        for (double d : {d0, d1})
            for (double n : {-static_cast<double>(N), static_cast<double>(N)})
                xmax = std::max(xmax, std::abs(q0 + d + 2.0 * n));
        diag_hi = xmax * xmax;
    }

    const bool cf4 = config.stepper == EvolutionConfig::Stepper::CommutatorFree4;
    ChebCoeffs cc;
    if (cf4)
        cc.init((kCf4A1 - kCf4A2) * 0.5 * diag_hi + std::abs(off) + 1.0, dt);
    else
        cc.init(0.5 * diag_hi + depth + 1.0, dt);

    Workspace ws;
    ws.diag.resize(static_cast<size_t>(size));
    ws.diag2.resize(static_cast<size_t>(size));
    ws.p.assign(static_cast<size_t>(size), cplx(1.0, 0.0));
    ws.u.assign(static_cast<size_t>(size), cplx(1.0, 0.0));
    ws.stamp.assign(static_cast<size_t>(size), -1);
    ws.resync.assign(static_cast<size_t>(size), 0);

    const double dD = alpha * dt;  // drift advance per step
    const cplx wglob = std::polar(1.0, -2.0 * dt * dD * dD);
    // CF4 applies the two node diagonals with weights summing to 1/2 each,
    // which for pure phases equals exp(-i dt (xbar^2 + delta^2)).
    const double cf4_delta = cf4 ? dD * kSqrt3 / 6.0 : 0.0;
    const double cf4_delta2 = cf4_delta * cf4_delta;

    if (!empty) {
        for (long j = 0; j < steps; ++j) {
            const double dmid = d0 + alpha * dt * (static_cast<double>(j) + 0.5);
            int blk_lo = 0, blk_hi = size - 1;
            if (windowed) {
                const long c = -static_cast<long>(std::floor((q0 + dmid + 1.0) / 2.0));
                if (c < -N || c > N)
                    throw NumericalError(
                        "evolve_segment: ladder too small for accumulated drift");
                blk_lo = std::max(0, static_cast<int>(c) + N - W);
                blk_hi = std::min(size - 1, static_cast<int>(c) + N + W);
            }
            occ_lo = std::min(occ_lo, blk_lo);
            occ_hi = std::max(occ_hi, blk_hi);

            const int m = blk_hi - blk_lo + 1;
            double* diag = ws.diag.data();
            if (cf4) {
                const double dm1 = dmid - dD * kSqrt3 / 6.0;
                const double dm2 = dmid + dD * kSqrt3 / 6.0;
                double* diag2 = ws.diag2.data();
                for (int i = 0; i < m; ++i) {
                    const double x1 = q0 + dm1 + 2.0 * (blk_lo + i - N);
                    const double x2 = q0 + dm2 + 2.0 * (blk_lo + i - N);
                    diag[i] = kCf4A1 * x1 * x1 + kCf4A2 * x2 * x2;
                    diag2[i] = kCf4A2 * x1 * x1 + kCf4A1 * x2 * x2;
                }
                apply_exp(cc, amps + blk_lo, diag, 0.5 * off, m, ws);
                apply_exp(cc, amps + blk_lo, diag2, 0.5 * off, m, ws);
            } else {
                for (int i = 0; i < m; ++i) {
                    const double x = q0 + dmid + 2.0 * (blk_lo + i - N);
                    diag[i] = x * x;
                }
                apply_exp(cc, amps + blk_lo, diag, off, m, ws);
            }

            // Sites outside the block: exact kinetic phases via a quadratic
            // phase recurrence, re-initialised exactly every 4096 steps.
            auto phase_range = [&](int lo, int hi) {
                for (int i = lo; i <= hi; ++i) {
                    if (ws.stamp[static_cast<size_t>(i)] != j) {
                        const double x = q0 + dmid + 2.0 * (i - N);
                        ws.p[static_cast<size_t>(i)] =
                            std::polar(1.0, -dt * (x * x + cf4_delta2));
                        ws.u[static_cast<size_t>(i)] =
                            std::polar(1.0, -dt * dD * (2.0 * x + dD));
                        ws.resync[static_cast<size_t>(i)] = 0;
                    }
                    cplx& p = ws.p[static_cast<size_t>(i)];
                    cplx& u = ws.u[static_cast<size_t>(i)];
                    amps[i] *= p;
                    p *= u;
                    u *= wglob;
                    // keep the recurrence factors on the unit circle; the
                    // residual phase drift is killed by the periodic resync
                    p *= 1.5 - 0.5 * std::norm(p);
                    u *= 1.5 - 0.5 * std::norm(u);
                    ws.stamp[static_cast<size_t>(i)] =
                        (++ws.resync[static_cast<size_t>(i)] >= 4096) ? -1 : j + 1;
                }
            };
            if (occ_lo < blk_lo) phase_range(occ_lo, blk_lo - 1);
            if (occ_hi > blk_hi) phase_range(blk_hi + 1, occ_hi);
        }
    }

    state.drift = d0 + alpha * T;
    state.t += T;

    const double norm1 = state.norm();
    if (std::abs(norm1 - norm0) > 1e-6 * std::max(norm0, 1e-12))
        throw NumericalError("evolve_segment: integrator failure, norm drifted by more than 1e-6");
    return state;
}

double survival_observable(const LadderState& state, const LatticeParams& params,
                           int band_basis_N) {
    int nb = band_basis_N > 0 ? band_basis_N : 16;
    nb = std::min(nb, state.N);
    const BandSolution sol = solve_bands(state.folded_q(), params.depth_dimless, nb);
    return band_population(state, 0, sol);
}

}  // namespace zenosim
