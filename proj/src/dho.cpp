#include "pseudoboson/dho.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace pseudoboson {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex rep_denominator(const DHOParams& p) {
    return p.Gamma * std::conj(p.delta) - p.delta * std::conj(p.Gamma);
}

}  // namespace

void DHOParams::validate() const {
    if (!(std::isfinite(m) && std::isfinite(gamma_damp) && std::isfinite(k) &&
          is_finite(Gamma) && is_finite(delta)))
        throw InvalidParamsError("DHOParams: non-finite entry");
    if (!(m > 0.0)) throw InvalidParamsError("DHOParams: mass must be positive");
    if (!(k > 0.0)) throw InvalidParamsError("DHOParams: spring constant must be positive");
    if (gamma_damp < 0.0) throw InvalidParamsError("DHOParams: damping must be non-negative");
    if (k < gamma_damp * gamma_damp / (4.0 * m))
        throw InvalidParamsError("DHOParams: requires k >= gamma^2 / (4m)");
    if (std::abs(rep_denominator(*this)) == 0.0)
        throw InvalidParamsError("DHOParams: Gamma conj(delta) must differ from delta conj(Gamma)");
}

DHODerived derive(const DHOParams& p) {
    p.validate();
    DHODerived d;
    d.Omega = std::sqrt((p.k - p.gamma_damp * p.gamma_damp / (4.0 * p.m)) / p.m);
    d.omega_plus = Complex{d.Omega, p.gamma_damp / (2.0 * p.m)};
    d.omega_minus = std::conj(d.omega_plus);
    const Complex den = rep_denominator(p);
    d.alpha = std::conj(p.Gamma) / den;
    d.beta = std::conj(p.delta) / den;
    return d;
}

DHOOps build_dho(const DHOParams& p) {
    DHOOps ops;
    ops.derived = derive(p);
    const Complex den = rep_denominator(p);
    const Complex wp = ops.derived.omega_plus;

    ops.x_plus = {0.0, std::conj(p.delta) / den, 0.0, 0.0, -kI * std::conj(p.Gamma) / den};
    ops.x_minus = {0.0, -p.delta / den, 0.0, 0.0, kI * p.Gamma / den};
    ops.p_plus = {0.0, 0.0, p.delta, -kI * p.Gamma, 0.0};
    ops.p_minus = {0.0, 0.0, std::conj(p.delta), -kI * std::conj(p.Gamma), 0.0};

    const Complex sp = std::sqrt(0.5 * wp);
    // sqrt and i/omega of the minus mode taken as exact conjugates of the
    // plus mode (omega_minus = conj(omega_plus))
    const Complex sm = std::conj(sp);
    const Complex iwp = kI / wp;
    const Complex iwm = -std::conj(iwp);  // i / omega_minus
    ops.a_plus = sp * (ops.x_plus + iwp * ops.p_plus);
    ops.b_plus = sp * (ops.x_plus - iwp * ops.p_plus);
    ops.a_minus = sm * (ops.x_minus + iwm * ops.p_minus);
    ops.b_minus = sm * (ops.x_minus - iwm * ops.p_minus);
    return ops;
}

DHOAlgebraReport dho_algebra_check(const DHOParams& p) {
    const DHOOps ops = build_dho(p);
    DHOAlgebraReport rep;

    const std::array<AffineOp, 4> pb{ops.a_plus, ops.b_plus, ops.a_minus, ops.b_minus};
    const std::array<CommutationRelation, 6> pb_expected{{{0, 1, 1.0},
                                                          {2, 3, 1.0},
                                                          {0, 2, 0.0},
                                                          {0, 3, 0.0},
                                                          {1, 2, 0.0},
                                                          {1, 3, 0.0}}};
    rep.commutator_residual_max = verify_commutation_table(pb, pb_expected).max_residual;

    rep.conjugation_residual = std::max(coeff_distance(ops.b_plus, adjoint(ops.a_minus)),
                                        coeff_distance(ops.b_minus, adjoint(ops.a_plus)));
    rep.conjugation_ok = rep.conjugation_residual <= 1e-14;

    const std::array<AffineOp, 4> xp{ops.x_plus, ops.p_plus, ops.x_minus, ops.p_minus};
    const std::array<CommutationRelation, 6> xp_expected{{{0, 1, kI},
                                                          {2, 3, kI},
                                                          {0, 2, 0.0},
                                                          {0, 3, 0.0},
                                                          {1, 2, 0.0},
                                                          {1, 3, 0.0}}};
    rep.canonical_residual_max = verify_commutation_table(xp, xp_expected).max_residual;

    rep.compatibility_residual = std::max(coeff_distance(adjoint(ops.p_plus), ops.p_minus),
                                          coeff_distance(adjoint(ops.x_plus), ops.x_minus));
    rep.compatibility_ok = rep.compatibility_residual <= 1e-14;
    return rep;
}

RatioCheck ratio_constraint(const DHOParams& p, double tol) {
    const DHODerived d = derive(p);
    RatioCheck rc;
    rc.lhs = d.omega_plus / d.omega_minus;
    rc.rhs = -(p.delta / std::conj(p.delta)) * (p.Gamma / std::conj(p.Gamma));
    rc.residual = std::abs(rc.lhs - rc.rhs);
    rc.holds = rc.residual <= tol;
    return rc;
}

Complex solve_ratio_constraint(Complex omega_plus, Complex Gamma, double delta_abs) {
    if (!(delta_abs > 0.0)) throw InvalidParamsError("solve_ratio_constraint: |delta| must be positive");
    const Complex ratio = omega_plus / std::conj(omega_plus);
    double theta = 0.5 * (std::arg(ratio) + std::numbers::pi) - std::arg(Gamma);
    theta -= std::numbers::pi * std::floor(theta / std::numbers::pi);
    return delta_abs * std::exp(kI * theta);
}

VacuumFeasibility vacuum_feasibility(const DHOParams& p) {
    const RatioCheck rc = ratio_constraint(p);
    if (!rc.holds)
        throw ConstraintNotSatisfiedError(
            "vacuum_feasibility: the phase condition on (Gamma, delta) fails");
    const DHOOps ops = build_dho(p);
    const DHODerived& d = ops.derived;

    const Complex q1 = d.beta * d.omega_plus / (2.0 * p.Gamma);
    const Complex q2y = p.delta / (2.0 * d.alpha * d.omega_plus);

    VacuumFeasibility vf;
    vf.re1 = q1.real();
    vf.re2 = q2y.real();
    vf.normalizable = vf.re1 > 0.0 && vf.re2 < 0.0;
    // exponent exp(-q1 x^2 + q2y y^2), stored with the fixed sign convention
    vf.vacuum = PolyGauss(CoeffMap{{{0, 0}, 1.0}}, QuadExponent{q1, -q2y, 0.0, 0.0, 0.0, 0.0});
    vf.annihilation_residual = std::max(coeff_norm(apply_affine(ops.a_plus, vf.vacuum)),
                                        coeff_norm(apply_affine(ops.a_minus, vf.vacuum)));
    return vf;
}

double hamiltonian_identity_check(const DHOParams& p, std::span<const PolyGauss> samples) {
    const DHOOps ops = build_dho(p);
    const Complex wp = ops.derived.omega_plus, wm = ops.derived.omega_minus;
    double worst = 0.0;
    for (const PolyGauss& f : samples) {
        PolyGauss lhs = scale(apply_affine(ops.b_plus, apply_affine(ops.a_plus, f)), wp);
        lhs = add(lhs, scale(apply_affine(ops.b_minus, apply_affine(ops.a_minus, f)), wm));
        lhs = add(lhs, scale(f, 0.5 * (wp + wm)));

        PolyGauss rhs = apply_affine(ops.p_plus, apply_affine(ops.p_plus, f));
        rhs = add(rhs, scale(apply_affine(ops.x_plus, apply_affine(ops.x_plus, f)), wp * wp));
        rhs = add(rhs, apply_affine(ops.p_minus, apply_affine(ops.p_minus, f)));
        rhs = add(rhs, scale(apply_affine(ops.x_minus, apply_affine(ops.x_minus, f)), wm * wm));
        rhs = scale(rhs, 0.5);

        worst = std::max(worst, relative_l2_distance(lhs, rhs));
    }
    return worst;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

DHOParams sweep_case(std::uint64_t seed, int index) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(std::uint64_t(index))));
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    DHOParams p;
    p.m = 0.5 + 1.5 * u01(rng);
    p.k = 0.5 + 1.5 * u01(rng);
    p.gamma_damp = 2.0 * std::sqrt(p.m * p.k) * std::max(u01(rng), 1e-3);
    const double gamma_abs = 0.5 + 1.5 * u01(rng);
    const double delta_abs = 0.5 + 1.5 * u01(rng);

    const DHOParams base{p.m, p.gamma_damp, p.k, Complex{1.0, 0.0}, Complex{0.0, 1.0}};
    const Complex wp = derive(base).omega_plus;

    // keep |sin(arg Gamma - arg delta)| away from zero so the representation
    // denominator stays well conditioned
    for (;;) {
        const double arg_gamma = 2.0 * std::numbers::pi * u01(rng);
        p.Gamma = gamma_abs * std::exp(kI * arg_gamma);
        p.delta = solve_ratio_constraint(wp, p.Gamma, delta_abs);
        if (std::abs(std::sin(arg_gamma - std::arg(p.delta))) >= 0.1) break;
    }
    return p;
}

DHOSweepResult run_dho_sweep(int n, std::uint64_t seed, Exec exec, int hamiltonian_samples) {
    struct CaseOut {
        bool normalizable = true;
        double comm = 0.0, conj = 0.0, ratio = 0.0, annih = 0.0, ham = 0.0;
    };
    std::vector<CaseOut> out(std::size_t(std::max(n, 0)));

    parallel_for(exec, out.size(), [&](std::size_t i) {
        const DHOParams p = sweep_case(seed, int(i));
        const DHOAlgebraReport alg = dho_algebra_check(p);
        const RatioCheck rc = ratio_constraint(p, 1e-10);
        const VacuumFeasibility vf = vacuum_feasibility(p);

        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(0x5eedULL + i)));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<PolyGauss> samples;
        for (int s = 0; s < hamiltonian_samples; ++s) {
            CoeffMap cm;
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; a + b <= 3; ++b) cm[{a, b}] = Complex(u(rng), u(rng));
            samples.emplace_back(std::move(cm), QuadExponent{0.5, 0.5, 0.0, 0.0, 0.0, 0.0});
        }

        out[i] = {vf.normalizable, alg.commutator_residual_max, alg.conjugation_residual,
                  rc.residual, vf.annihilation_residual,
                  hamiltonian_identity_check(p, samples)};
    });

    DHOSweepResult res;
    res.total = int(out.size());
    for (const CaseOut& c : out) {
        if (!c.normalizable) ++res.normalizable_false;
        res.max_commutator_residual = std::max(res.max_commutator_residual, c.comm);
        res.max_conjugation_residual = std::max(res.max_conjugation_residual, c.conj);
        res.max_ratio_residual = std::max(res.max_ratio_residual, c.ratio);
        res.max_annihilation_residual = std::max(res.max_annihilation_residual, c.annih);
        res.max_hamiltonian_residual = std::max(res.max_hamiltonian_residual, c.ham);
    }
    return res;
}

}  // namespace pseudoboson
