#include "pseudoboson/gll.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace pseudoboson {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// plain polynomial helpers (coefficient maps without an exponent)

void poly_accumulate(CoeffMap& m, MonomialKey key, Complex v) {
    auto [it, inserted] = m.emplace(key, v);
    if (!inserted) it->second += v;
}

CoeffMap poly_ddx(const CoeffMap& p) {
    CoeffMap out;
    for (const auto& [k, v] : p)
        if (k.first > 0) poly_accumulate(out, {k.first - 1, k.second}, double(k.first) * v);
    return out;
}

CoeffMap poly_ddy(const CoeffMap& p) {
    CoeffMap out;
    for (const auto& [k, v] : p)
        if (k.second > 0) poly_accumulate(out, {k.first, k.second - 1}, double(k.second) * v);
    return out;
}

CoeffMap poly_combine(const CoeffMap& a, Complex sa, const CoeffMap& b, Complex sb,
                      Complex constant = 0.0) {
    CoeffMap out;
    for (const auto& [k, v] : a) poly_accumulate(out, k, sa * v);
    for (const auto& [k, v] : b) poly_accumulate(out, k, sb * v);
    if (constant != 0.0) poly_accumulate(out, {0, 0}, constant);
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0.0) ? out.erase(it) : std::next(it);
    return out;
}

double poly_max_abs(const CoeffMap& p) {
    double m = 0.0;
    for (const auto& [k, v] : p) m = std::max(m, std::abs(v));
    return m;
}

std::vector<Complex> solve_dense(ComplexMatrix a, std::vector<Complex> b) {
    const int n = a.rows;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (std::abs(a.at(piv, col)) == 0.0) throw Error("solve_dense: singular matrix");
        if (piv != col) {
            for (int c = col; c < n; ++c) std::swap(a.at(piv, c), a.at(col, c));
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const Complex f = a.at(r, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
            b[r] -= f * b[col];
        }
    }
    std::vector<Complex> x(n);
    for (int r = n - 1; r >= 0; --r) {
        Complex s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a.at(r, c) * x[c];
        x[r] = s / a.at(r, r);
    }
    return x;
}

PolyGauss gaussian_multiplier(double qxx, double qyy) {
    return PolyGauss(CoeffMap{{{0, 0}, 1.0}}, QuadExponent{qxx, qyy, 0.0, 0.0, 0.0, 0.0});
}

}  // namespace

GLLParams GLLParams::standard(double k1, double k2) {
    return {k1, k2, kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2};
}

void GLLParams::validate() const {
    if (!(std::isfinite(k1) && std::isfinite(k2) && is_finite(alpha) && is_finite(gamma) &&
          is_finite(alphap) && is_finite(gammap)))
        throw InvalidParamsError("GLLParams: non-finite entry");
    if (!(k1 > -0.5 && k1 < 0.5 && k2 > -0.5 && k2 < 0.5))
        throw InvalidParamsError("GLLParams: k1, k2 must lie in (-1/2, 1/2)");
    if (std::abs(alpha * gamma - 0.5) > 1e-14 || std::abs(alphap * gammap - 0.5) > 1e-14)
        throw InvalidParamsError("GLLParams: couplings must satisfy alpha*gamma = 1/2");
}

bool GLLParams::standard_couplings(double tol) const {
    return std::abs(alpha - kInvSqrt2) <= tol && std::abs(gamma - kInvSqrt2) <= tol &&
           std::abs(alphap - kInvSqrt2) <= tol && std::abs(gammap - kInvSqrt2) <= tol;
}

GLLOps build_gll(const GLLParams& p) {
    p.validate();
    const double up2 = 0.5 * (1.0 + 2.0 * p.k2), um2 = 0.5 * (1.0 - 2.0 * p.k2);
    const double up1 = 0.5 * (1.0 + 2.0 * p.k1), um1 = 0.5 * (1.0 - 2.0 * p.k1);
    GLLOps ops;
    ops.Ap = {0.0, p.alphap * up2, -kI * p.alphap * um1, p.alphap, -kI * p.alphap};
    ops.Bp = {0.0, p.gammap * um2, kI * p.gammap * up1, -p.gammap, -kI * p.gammap};
    ops.A = {0.0, -kI * p.alpha * up2, p.alpha * um1, -kI * p.alpha, p.alpha};
    ops.B = {0.0, kI * p.gamma * um2, p.gamma * up1, -kI * p.gamma, -p.gamma};
    return ops;
}

CanonicalOps build_gll_canonical(const GLLParams& p) {
    p.validate();
    // P' = p_x + W2, Q' = p_y - W1, P = p_y + V1, Q = p_x - V2 with the
    // model superpotentials; p_x = -i d/dx, p_y = -i d/dy.
    CanonicalOps ops;
    ops.Pp = {0.0, -kI * p.k2, -0.5, -kI, 0.0};
    ops.Qp = {0.0, 0.5, kI * p.k1, 0.0, -kI};
    ops.P = {0.0, -0.5, kI * p.k1, 0.0, -kI};
    ops.Q = {0.0, -kI * p.k2, 0.5, -kI, 0.0};
    return ops;
}

std::pair<PolyGauss, PolyGauss> vacuum_pair(const GLLParams& p) {
    p.validate();
    const QuadExponent ephi{0.25 * (1.0 + 2.0 * p.k2), 0.25 * (1.0 - 2.0 * p.k1),
                            0.0, 0.0, 0.0, 0.0};
    const QuadExponent epsi{0.25 * (1.0 - 2.0 * p.k2), 0.25 * (1.0 + 2.0 * p.k1),
                            0.0, 0.0, 0.0, 0.0};
    return {PolyGauss(CoeffMap{{{0, 0}, kInvSqrt2Pi}}, ephi),
            PolyGauss(CoeffMap{{{0, 0}, kInvSqrt2Pi}}, epsi)};
}

FamilyTable generate_family(const GLLParams& p, int nmax, int lmax, Exec exec) {
    p.validate();
    if (nmax < 0 || lmax < 0 || nmax > 24 || lmax > 24)
        throw DegreeCapExceededError("generate_family: nmax, lmax must lie in [0, 24]");

    FamilyTable t;
    t.params = p;
    t.nmax = nmax;
    t.lmax = lmax;
    const auto ops = build_gll(p);
    const AffineOp a_dag = adjoint(ops.A), ap_dag = adjoint(ops.Ap);
    auto [phi00, psi00] = vacuum_pair(p);

    t.phi.assign(nmax + 1, std::vector<PolyGauss>(lmax + 1));
    t.psi.assign(nmax + 1, std::vector<PolyGauss>(lmax + 1));
    t.phi[0][0] = phi00;
    t.psi[0][0] = psi00;
    for (int l = 1; l <= lmax; ++l) {
        const double s = 1.0 / std::sqrt(double(l));
        t.phi[0][l] = scale(apply_affine(ops.B, t.phi[0][l - 1]), s);
        t.psi[0][l] = scale(apply_affine(a_dag, t.psi[0][l - 1]), s);
    }
    parallel_for(exec, std::size_t(lmax) + 1, [&](std::size_t l) {
        for (int n = 1; n <= nmax; ++n) {
            const double s = 1.0 / std::sqrt(double(n));
            t.phi[n][l] = scale(apply_affine(ops.Bp, t.phi[n - 1][l]), s);
            t.psi[n][l] = scale(apply_affine(ap_dag, t.psi[n - 1][l]), s);
        }
    });
    return t;
}

namespace {

std::vector<PolyGauss> flatten(const std::vector<std::vector<PolyGauss>>& f) {
    std::vector<PolyGauss> out;
    for (const auto& row : f)
        for (const auto& v : row) out.push_back(v);
    return out;
}

}  // namespace

ComplexMatrix biorthogonality_matrix(const FamilyTable& t, Exec exec) {
    const auto left = flatten(t.psi), right = flatten(t.phi);
    return gram_matrix(left, right, exec);
}

ComplexMatrix biorthogonality_matrix_serial(const FamilyTable& t) {
    const auto left = flatten(t.psi), right = flatten(t.phi);
    return gram_matrix_serial(left, right);
}

double max_off_kronecker_residual(const ComplexMatrix& g) {
    double m = 0.0;
    for (int r = 0; r < g.rows; ++r)
        for (int c = 0; c < g.cols; ++c)
            m = std::max(m, std::abs(g.at(r, c) - (r == c ? 1.0 : 0.0)));
    return m;
}

EigenResidualTable eigen_residuals(const FamilyTable& t) {
    const auto ops = build_gll(t.params);
    const AffineOp a_dag = adjoint(ops.A), b_dag = adjoint(ops.B);
    const AffineOp ap_dag = adjoint(ops.Ap), bp_dag = adjoint(ops.Bp);

    EigenResidualTable out;
    auto init = [&](auto& v) { v.assign(t.nmax + 1, std::vector<double>(t.lmax + 1)); };
    init(out.phi_np), init(out.phi_n), init(out.psi_np), init(out.psi_n);

    for (int n = 0; n <= t.nmax; ++n) {
        for (int l = 0; l <= t.lmax; ++l) {
            const PolyGauss& f = t.phi[n][l];
            const PolyGauss& h = t.psi[n][l];
            const double nf = l2_norm(f), nh = l2_norm(h);
            // N' = B'A' with eigenvalue n, N = BA with eigenvalue l on phi;
            // the adjoint pair acts on psi with the same eigenvalues.
            const double r1 =
                l2_norm(sub(apply_affine(ops.Bp, apply_affine(ops.Ap, f)), scale(f, double(n))));
            const double r2 =
                l2_norm(sub(apply_affine(ops.B, apply_affine(ops.A, f)), scale(f, double(l))));
            const double r3 =
                l2_norm(sub(apply_affine(ap_dag, apply_affine(bp_dag, h)), scale(h, double(n))));
            const double r4 =
                l2_norm(sub(apply_affine(a_dag, apply_affine(b_dag, h)), scale(h, double(l))));
            out.phi_np[n][l] = r1;
            out.phi_n[n][l] = r2;
            out.psi_np[n][l] = r3;
            out.psi_n[n][l] = r4;
            out.max_absolute = std::max({out.max_absolute, r1, r2, r3, r4});
            out.max_relative = std::max({out.max_relative, r1 / nf, r2 / nf, r3 / nh, r4 / nh});
        }
    }
    return out;
}

PolyGauss t_phi_multiplier(const GLLParams& p) {
    if (!p.standard_couplings())
        throw UnsupportedCouplingsError("t_phi_multiplier: couplings must be 1/sqrt(2)");
    return gaussian_multiplier(0.5 * p.k2, -0.5 * p.k1);
}

PolyGauss t_psi_multiplier(const GLLParams& p) {
    if (!p.standard_couplings())
        throw UnsupportedCouplingsError("t_psi_multiplier: couplings must be 1/sqrt(2)");
    return gaussian_multiplier(-0.5 * p.k2, 0.5 * p.k1);
}

PolyGauss s_phi_multiplier(const GLLParams& p) {
    if (!p.standard_couplings())
        throw UnsupportedCouplingsError("s_phi_multiplier: couplings must be 1/sqrt(2)");
    return gaussian_multiplier(p.k2, -p.k1);
}

PolyGauss s_psi_multiplier(const GLLParams& p) {
    if (!p.standard_couplings())
        throw UnsupportedCouplingsError("s_psi_multiplier: couplings must be 1/sqrt(2)");
    return gaussian_multiplier(-p.k2, p.k1);
}

MetricReport metric_ops_check(const GLLParams& p, const FamilyTable& t, unsigned seed) {
    if (!p.standard_couplings())
        throw UnsupportedCouplingsError("metric_ops_check: couplings must be 1/sqrt(2)");
    p.validate();

    const auto sll = generate_family(GLLParams::standard(0.0, 0.0), t.nmax, t.lmax, Exec::serial);
    const PolyGauss tphi = t_phi_multiplier(p), tpsi = t_psi_multiplier(p);
    const PolyGauss sphi = s_phi_multiplier(p), spsi = s_psi_multiplier(p);
    const auto ops = build_gll(p);
    const auto sll_ops = build_gll(GLLParams::standard(0.0, 0.0));
    const AffineOp a0p_dag = adjoint(sll_ops.Ap);

    MetricReport rep;
    for (int n = 0; n <= t.nmax; ++n) {
        for (int l = 0; l <= t.lmax; ++l) {
            const double nphi = l2_norm(t.phi[n][l]), npsi = l2_norm(t.psi[n][l]);
            rep.t_phi_residual_max = std::max(
                rep.t_phi_residual_max, l2_distance(t.phi[n][l], mul(tphi, sll.phi[n][l])) / nphi);
            rep.t_psi_residual_max = std::max(
                rep.t_psi_residual_max, l2_distance(t.psi[n][l], mul(tpsi, sll.phi[n][l])) / npsi);
            rep.s_map_residual_max = std::max(
                rep.s_map_residual_max, l2_distance(mul(sphi, t.psi[n][l]), t.phi[n][l]) / nphi);

            // S_psi N' phi = N'^dag S_psi phi and the same for N
            const PolyGauss spf = mul(spsi, t.phi[n][l]);
            const PolyGauss r1 =
                apply_affine(adjoint(ops.Ap), apply_affine(adjoint(ops.Bp), spf));
            const PolyGauss r2 = apply_affine(adjoint(ops.A), apply_affine(adjoint(ops.B), spf));
            const double d1 = l2_distance(
                mul(spsi, apply_affine(ops.Bp, apply_affine(ops.Ap, t.phi[n][l]))), r1);
            const double d2 = l2_distance(
                mul(spsi, apply_affine(ops.B, apply_affine(ops.A, t.phi[n][l]))), r2);
            rep.intertwine_s_residual_max =
                std::max({rep.intertwine_s_residual_max, d1 / (1.0 + l2_norm(r1)),
                          d2 / (1.0 + l2_norm(r2))});
        }
    }

    // random degree <= 4 samples for the inverse and T-intertwining checks
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto [phi00, psi00] = vacuum_pair(p);
    const QuadExponent e_sll{0.25, 0.25, 0.0, 0.0, 0.0, 0.0};
    for (int s = 0; s < 5; ++s) {
        auto random_poly = [&](const QuadExponent& e) {
            CoeffMap cm;
            for (int m = 0; m <= 4; ++m)
                for (int n2 = 0; n2 + m <= 4; ++n2) cm[{m, n2}] = Complex(u(rng), u(rng));
            return PolyGauss(std::move(cm), e);
        };
        const PolyGauss f = random_poly(phi00.exponent());
        const PolyGauss g = random_poly(psi00.exponent());
        rep.s_inverse_residual_max =
            std::max({rep.s_inverse_residual_max, relative_l2_distance(mul(sphi, mul(spsi, f)), f),
                      relative_l2_distance(mul(spsi, mul(sphi, g)), g)});

        const PolyGauss h = random_poly(e_sll);
        rep.intertwine_t_residual_max =
            std::max(rep.intertwine_t_residual_max,
                     relative_l2_distance(apply_affine(ops.Bp, mul(tphi, h)),
                                          mul(tphi, apply_affine(a0p_dag, h))));
    }
    return rep;
}

RieszDiagnostic riesz_diagnostic(const FamilyTable& t) {
    RieszDiagnostic d;
    const int nmax = std::min(t.nmax, t.lmax);
    double sup = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        const double r = l2_norm(t.phi[n][n]) * l2_norm(t.psi[n][n]);
        d.r.push_back(r);
        sup = std::max(sup, r);
    }
    d.verdict = (sup <= 1.0 + 1e-6) ? "Riesz-compatible" : "norm growth detected";
    return d;
}

SuperpotentialReport check_superpotential_constraints(const SuperpotentialPair& sp) {
    for (const CoeffMap* p : {&sp.W1, &sp.W2, &sp.V1, &sp.V2})
        for (const auto& [k, v] : *p) {
            if (!is_finite(v)) throw NonFiniteError("superpotential: non-finite coefficient");
            if (k.first + k.second > 16)
                throw DegreeCapExceededError("superpotential: degree exceeds 16");
        }

    SuperpotentialReport rep;
    rep.residuals[0] = poly_combine(poly_ddx(sp.W1), 1.0, poly_ddy(sp.V2), -1.0);
    rep.residuals[1] = poly_combine(poly_ddx(sp.W2), 1.0, poly_ddx(sp.V2), 1.0);
    rep.residuals[2] = poly_combine(poly_ddy(sp.W1), 1.0, poly_ddy(sp.V1), 1.0);
    rep.residuals[3] = poly_combine(poly_ddy(sp.W2), 1.0, poly_ddx(sp.V1), -1.0);
    rep.residuals[4] = poly_combine(poly_ddx(sp.V1), 1.0, poly_ddy(sp.V2), 1.0, 1.0);
    rep.residuals[5] = poly_combine(poly_ddx(sp.W1), 1.0, poly_ddy(sp.W2), 1.0, 1.0);
    for (const auto& r : rep.residuals) rep.max_coeff = std::max(rep.max_coeff, poly_max_abs(r));
    rep.satisfied = rep.max_coeff <= 1e-14;
    return rep;
}

SuperpotentialPair model_superpotential(double k1, double k2) {
    SuperpotentialPair sp;
    sp.W1 = {{{1, 0}, -0.5}, {{0, 1}, -kI * k1}};
    sp.W2 = {{{0, 1}, -0.5}, {{1, 0}, -kI * k2}};
    sp.V1 = {{{1, 0}, -0.5}, {{0, 1}, kI * k1}};
    sp.V2 = {{{0, 1}, -0.5}, {{1, 0}, kI * k2}};
    return sp;
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

PolyGauss closed_edge(const PolyGauss& vac, Complex step, int n, Complex y_unit) {
    // prefactor step^n / sqrt(n!) times (x + y_unit*y)^n, built on the vacuum
    Complex pref = vac.coeffs().begin()->second;
    for (int i = 1; i <= n; ++i) pref *= step / std::sqrt(double(i));
    CoeffMap cm;
    for (int j = 0; j <= n; ++j)
        cm[{n - j, j}] = pref * binomial(n, j) * std::pow(y_unit, j);
    return PolyGauss(std::move(cm), vac.exponent());
}

}  // namespace

PolyGauss closed_form_phi_n0(const GLLParams& p, int n) {
    return closed_edge(vacuum_pair(p).first, p.gammap, n, kI);
}

PolyGauss closed_form_phi_0l(const GLLParams& p, int l) {
    return closed_edge(vacuum_pair(p).first, kI * p.gamma, l, -kI);
}

PolyGauss closed_form_psi_n0(const GLLParams& p, int n) {
    return closed_edge(vacuum_pair(p).second, std::conj(p.alphap), n, kI);
}

PolyGauss closed_form_psi_0l(const GLLParams& p, int l) {
    return closed_edge(vacuum_pair(p).second, kI * std::conj(p.alpha), l, -kI);
}

CompletenessReport monomial_reconstruction(const FamilyTable& t, int max_deg) {
    if (max_deg > std::min(t.nmax, t.lmax))
        throw IndexOutOfRangeError("monomial_reconstruction: family table too small");

    std::vector<MonomialKey> idx;  // shared enumeration for monomials and (i,j) labels
    for (int total = 0; total <= max_deg; ++total)
        for (int i = 0; i <= total; ++i) idx.push_back({i, total - i});
    const int dim = int(idx.size());

    ComplexMatrix a(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const auto& [i, j] = idx[col];
        for (const auto& [mk, v] : t.phi[i][j].coeffs()) {
            const auto row = std::find(idx.begin(), idx.end(), mk);
            if (row != idx.end()) a.at(int(row - idx.begin()), col) = v;
        }
    }

    const Complex vac_coeff = t.phi[0][0].coeffs().begin()->second;
    CompletenessReport rep;
    rep.max_degree = max_deg;
    for (int target = 0; target < dim; ++target) {
        std::vector<Complex> rhs(dim);
        rhs[target] = vac_coeff;
        const auto x = solve_dense(a, rhs);
        // residual of the reconstruction, relative to the vacuum coefficient
        for (int r = 0; r < dim; ++r) {
            Complex s = -rhs[r];
            for (int c = 0; c < dim; ++c) s += a.at(r, c) * x[c];
            rep.max_residual = std::max(rep.max_residual, std::abs(s) / std::abs(vac_coeff));
        }
    }
    return rep;
}

}  // namespace pseudoboson
