#pragma once

#include "pseudoboson/gll.hpp"

namespace pseudoboson {

// Joint eigenvectors (phi~, psi~) of the two lowering operators and the two
// adjoint raising operators, normalized so <psi~, phi~> = 1 with both
// normalization constants real positive.  Requires couplings 1/sqrt(2).
//
// Both quadratic exponent terms are taken decaying; this is the unique
// square-integrable solution of the eigenvalue system, certified by the
// eigen-residual checks rather than by any printed formula.
struct BicoherentPair {
    GLLParams params;
    Complex z{}, zp{};
    PolyGauss phi_t, psi_t;
};

BicoherentPair bicoherent_pair(const GLLParams& p, Complex z, Complex zp);

// Truncated double ladder sum with prefactor exp(-(|z1|^2+|z2|^2)/2); every
// term shares the vacuum exponent, so the result is a single PolyGauss.
PolyGauss series_coherent(const FamilyTable& t, Complex z1, Complex z2, int N);
PolyGauss series_coherent_psi(const FamilyTable& t, Complex z1, Complex z2, int N);

// L2 distance between the truncated series state and the closed-form state,
// reported for both ways of pairing the series labels with (z, zp); the
// pairing is not fixed a priori, so both are measured.
struct SeriesVsClosed {
    double dist_z1_is_zp = 0.0;  // series(z1=zp, z2=z)
    double dist_z1_is_z = 0.0;   // series(z1=z, z2=zp)
};
SeriesVsClosed series_vs_closed(const FamilyTable& t, Complex z, Complex zp, int N);

// Tensor Gauss-Hermite grid over the four real label coordinates
// (Re z, Im z, Re zp, Im zp) with an affine rescaling.  Stored per axis:
// t[i] = scale * x_i and a[i] = scale * w_i * exp(x_i^2), so that
// \int f dt ~= sum a_i f(t_i) for Gaussian-decaying f.
struct QuadratureGrid4D {
    int nodes_per_axis = 0;
    double scale = 1.0;
    std::vector<double> t, a;

    static QuadratureGrid4D gauss_hermite(int nodes_per_axis, double scale = 1.0);
};

// I(f,g) = (1/pi^2) \int <f, phi~(z,zp)> <psi~(z,zp), g> dz dzp over the
// grid; to be compared against <f, g> by the caller.  The node map is pure;
// the reduction is the deterministic pairwise sum, so serial and parallel
// execution agree bitwise.
Complex roi_pairing(const GLLParams& p, const PolyGauss& f, const PolyGauss& g,
                    const QuadratureGrid4D& grid, Exec exec = Exec::parallel);

struct RoiResult {
    Complex value{}, target{};
    double abs_err = 0.0;
    int nodes = 0;
    double scale = 1.0;
};

// Runs the grid and a refined grid (nodes+8); throws GridTooCoarseError when
// the two differ by more than 10x the target tolerance.
RoiResult roi_check(const GLLParams& p, const PolyGauss& f, const PolyGauss& g,
                    const QuadratureGrid4D& grid, double tol, Exec exec = Exec::parallel);

// Same pairing built from truncated series states instead of the closed
// forms (the sufficiency-probe experiment; nothing is asserted at k != 0).
Complex roi_series_pairing(const FamilyTable& t, const PolyGauss& f, const PolyGauss& g,
                           const QuadratureGrid4D& grid, int N, Exec exec = Exec::parallel);

}  // namespace pseudoboson
