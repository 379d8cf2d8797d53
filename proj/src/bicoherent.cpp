#include "pseudoboson/bicoherent.hpp"

#include <cmath>
#include <numbers>

#include "pseudoboson/gauss_hermite.hpp"

namespace pseudoboson {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

}  // namespace

BicoherentPair bicoherent_pair(const GLLParams& p, Complex z, Complex zp) {
    p.validate();
    if (!p.standard_couplings())
        throw UnsupportedCouplingsError("bicoherent_pair: couplings must be 1/sqrt(2)");
    if (!(is_finite(z) && is_finite(zp)))
        throw InvalidParamsError("bicoherent_pair: non-finite label");

    const Complex u = (zp + kI * z) * kInvSqrt2;
    const Complex v = (z + kI * zp) * kInvSqrt2;
    // N_A = N_B: square root of (2 pi)^{-1} exp(-|z - i conj(zp)|^2) carrying
    // the common phase exp(-i Re(z zp)).  The phase cancels out of the
    // mutual pairing and of N_A conj(N_B), and it is exactly the phase the
    // ladder-series state develops in the undeformed limit, so the two
    // constructions can be compared without a convention offset.
    const double norm_arg = std::norm(z - kI * std::conj(zp));
    const Complex n_pair = kInvSqrt2Pi * std::exp(-0.5 * norm_arg) *
                           std::exp(-kI * (z * zp).real());

    BicoherentPair pair;
    pair.params = p;
    pair.z = z;
    pair.zp = zp;
    pair.phi_t = PolyGauss(CoeffMap{{{0, 0}, n_pair}},
                           QuadExponent{0.25 * (1.0 + 2.0 * p.k2), 0.25 * (1.0 - 2.0 * p.k1),
                                        0.0, u, v, 0.0});
    pair.psi_t = PolyGauss(CoeffMap{{{0, 0}, n_pair}},
                           QuadExponent{0.25 * (1.0 - 2.0 * p.k2), 0.25 * (1.0 + 2.0 * p.k1),
                                        0.0, u, v, 0.0});
    return pair;
}

namespace {

PolyGauss series_sum(const std::vector<std::vector<PolyGauss>>& fam, Complex z1, Complex z2,
                     int N, int nmax, int lmax) {
    if (N < 0 || N > std::min(nmax, lmax))
        throw TruncationTooLargeError("series_coherent: N exceeds the family table");
    const double pref = std::exp(-0.5 * (std::norm(z1) + std::norm(z2)));
    CoeffMap acc;
    Complex w1 = pref;
    for (int n = 0; n <= N; ++n) {
        Complex w = w1;
        for (int l = 0; l <= N; ++l) {
            for (const auto& [k, c] : fam[n][l].coeffs()) {
                auto [it, inserted] = acc.emplace(k, w * c);
                if (!inserted) it->second += w * c;
            }
            w *= z2 / std::sqrt(double(l + 1));
        }
        w1 *= z1 / std::sqrt(double(n + 1));
    }
    return PolyGauss(std::move(acc), fam[0][0].exponent());
}

}  // namespace

PolyGauss series_coherent(const FamilyTable& t, Complex z1, Complex z2, int N) {
    return series_sum(t.phi, z1, z2, N, t.nmax, t.lmax);
}

PolyGauss series_coherent_psi(const FamilyTable& t, Complex z1, Complex z2, int N) {
    return series_sum(t.psi, z1, z2, N, t.nmax, t.lmax);
}

SeriesVsClosed series_vs_closed(const FamilyTable& t, Complex z, Complex zp, int N) {
    const BicoherentPair closed = bicoherent_pair(t.params, z, zp);
    SeriesVsClosed out;
    out.dist_z1_is_zp = l2_distance(series_coherent(t, zp, z, N), closed.phi_t);
    out.dist_z1_is_z = l2_distance(series_coherent(t, z, zp, N), closed.phi_t);
    return out;
}

QuadratureGrid4D QuadratureGrid4D::gauss_hermite(int nodes_per_axis, double scale) {
    if (nodes_per_axis < 8)
        throw InvalidParamsError("QuadratureGrid4D: need at least 8 nodes per axis");
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw InvalidParamsError("QuadratureGrid4D: scale must be positive");
    const GaussHermiteRule rule = gauss_hermite_rule(nodes_per_axis);
    QuadratureGrid4D g;
    g.nodes_per_axis = nodes_per_axis;
    g.scale = scale;
    g.t.resize(nodes_per_axis);
    g.a.resize(nodes_per_axis);
    for (int i = 0; i < nodes_per_axis; ++i) {
        g.t[i] = scale * rule.x[i];
        g.a[i] = scale * rule.w[i] * std::exp(rule.x[i] * rule.x[i]);
    }
    return g;
}

namespace {

template <class NodeValue>
Complex grid_sum(const QuadratureGrid4D& grid, Exec exec, NodeValue&& value) {
    const std::size_t n = std::size_t(grid.nodes_per_axis);
    std::vector<Complex> vals(n * n * n * n);
    parallel_for(exec, vals.size(), [&](std::size_t idx) {
        std::size_t rest = idx;
        const std::size_t l = rest % n;
        rest /= n;
        const std::size_t k = rest % n;
        rest /= n;
        const std::size_t j = rest % n;
        const std::size_t i = rest / n;
        const Complex z{grid.t[i], grid.t[j]};
        const Complex zp{grid.t[k], grid.t[l]};
        vals[idx] = grid.a[i] * grid.a[j] * grid.a[k] * grid.a[l] * value(z, zp);
    });
    const double inv_pi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
    return inv_pi2 * pairwise_sum(std::span<const Complex>(vals));
}

}  // namespace

Complex roi_pairing(const GLLParams& p, const PolyGauss& f, const PolyGauss& g,
                    const QuadratureGrid4D& grid, Exec exec) {
    return grid_sum(grid, exec, [&](Complex z, Complex zp) {
        const BicoherentPair bc = bicoherent_pair(p, z, zp);
        return inner_product(f, bc.phi_t) * inner_product(bc.psi_t, g);
    });
}

RoiResult roi_check(const GLLParams& p, const PolyGauss& f, const PolyGauss& g,
                    const QuadratureGrid4D& grid, double tol, Exec exec) {
    const Complex coarse = roi_pairing(p, f, g, grid, exec);
    const auto fine_grid =
        QuadratureGrid4D::gauss_hermite(grid.nodes_per_axis + 8, grid.scale);
    const Complex fine = roi_pairing(p, f, g, fine_grid, exec);
    if (std::abs(fine - coarse) > 10.0 * tol)
        throw GridTooCoarseError("roi_check: successive refinements disagree");
    RoiResult r;
    r.value = fine;
    r.target = inner_product(f, g);
    r.abs_err = std::abs(r.value - r.target);
    r.nodes = grid.nodes_per_axis;
    r.scale = grid.scale;
    return r;
}

Complex roi_series_pairing(const FamilyTable& t, const PolyGauss& f, const PolyGauss& g,
                           const QuadratureGrid4D& grid, int N, Exec exec) {
    return grid_sum(grid, exec, [&](Complex z1, Complex z2) {
        const PolyGauss sphi = series_coherent(t, z1, z2, N);
        const PolyGauss spsi = series_coherent_psi(t, z1, z2, N);
        return inner_product(f, sphi) * inner_product(spsi, g);
    });
}

}  // namespace pseudoboson
