#include "pseudoboson/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "pseudoboson/bicoherent.hpp"
#include "pseudoboson/dho.hpp"
#include "pseudoboson/gll.hpp"
#include "pseudoboson/serialize.hpp"

namespace pseudoboson {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json cjson(Complex v) { return ordered_json::array({v.real(), v.imag()}); }

Complex complex_from_json(const nlohmann::json& j, const std::string& key) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ConfigError("config key '" + key + "': expected number or [re, im]");
}

class Stopwatch {
public:
    explicit Stopwatch(bool enabled) : enabled_(enabled) { reset(); }
    void reset() { start_ = std::chrono::steady_clock::now(); }
    double lap_ms() {
        if (!enabled_) return 0.0;
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
        start_ = now;
        return ms;
    }

private:
    bool enabled_;
    std::chrono::steady_clock::time_point start_;
};

class CheckList {
public:
    explicit CheckList(bool timing) : watch_(timing) {}

    void check(const std::string& name, const std::string& tag, double residual, double tol) {
        add(name, tag, residual <= tol ? "pass" : "fail", residual, tol);
    }
    void check_bool(const std::string& name, const std::string& tag, bool ok) {
        add(name, tag, ok ? "pass" : "fail", ok ? 0.0 : 1.0, 0.5);
    }
    void info(const std::string& name, const std::string& tag, double value) {
        add(name, tag, "info", value, std::nullopt);
    }

    const ordered_json& json() const { return arr_; }
    int failures() const { return failures_; }

private:
    void add(const std::string& name, const std::string& tag, const std::string& status,
             double residual, std::optional<double> tol) {
        ordered_json c;
        c["name"] = name;
        c["tag"] = tag;
        c["status"] = status;
        c["residual"] = residual;
        if (tol) c["tolerance"] = *tol;
        c["wall_ms"] = watch_.lap_ms();
        arr_.push_back(std::move(c));
        if (status == "fail") ++failures_;
    }

    ordered_json arr_ = ordered_json::array();
    int failures_ = 0;
    Stopwatch watch_;
};

const std::vector<std::string> kCommands = {"gll-verify", "gll-coherent", "gll-roi",
                                            "dho-check",  "dho-sweep",    "sll-baseline"};

double default_tol(const std::string& command) {
    if (command == "gll-roi") return 1e-3;
    return 1e-10;
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

PolyGauss seeded_polygauss(std::uint64_t seed, int index, int max_deg,
                           const QuadExponent& e) {
    std::mt19937_64 rng(mix64(seed ^ mix64(std::uint64_t(index))));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CoeffMap cm;
    for (int a = 0; a <= max_deg; ++a)
        for (int b = 0; a + b <= max_deg; ++b) cm[{a, b}] = Complex(u(rng), u(rng));
    return PolyGauss(std::move(cm), e);
}

// residuals of the lowering/adjoint-raising eigen equations on a bicoherent pair
struct BicoherentResiduals {
    double a, ap, b_dag, bp_dag;
    Complex overlap;
    double overlap_offset;
};
BicoherentResiduals bicoherent_residuals(const BicoherentPair& bc) {
    const auto ops = build_gll(bc.params);
    BicoherentResiduals r{};
    r.a = l2_norm(sub(apply_affine(ops.A, bc.phi_t), scale(bc.phi_t, bc.z)));
    r.ap = l2_norm(sub(apply_affine(ops.Ap, bc.phi_t), scale(bc.phi_t, bc.zp)));
    r.b_dag = l2_norm(sub(apply_affine(adjoint(ops.B), bc.psi_t), scale(bc.psi_t, bc.z)));
    r.bp_dag = l2_norm(sub(apply_affine(adjoint(ops.Bp), bc.psi_t), scale(bc.psi_t, bc.zp)));
    r.overlap = inner_product(bc.psi_t, bc.phi_t);
    r.overlap_offset = std::abs(r.overlap - 1.0);
    return r;
}

double vacuum_residuals(const GLLParams& params) {
    const auto ops = build_gll(params);
    const auto [phi00, psi00] = vacuum_pair(params);
    double worst = l2_norm(apply_affine(ops.A, phi00));
    worst = std::max(worst, l2_norm(apply_affine(ops.Ap, phi00)));
    worst = std::max(worst, l2_norm(apply_affine(adjoint(ops.B), psi00)));
    worst = std::max(worst, l2_norm(apply_affine(adjoint(ops.Bp), psi00)));
    worst = std::max(worst, std::abs(inner_product(psi00, phi00) - 1.0));
    return worst;
}

double gll_commutator_residual(const GLLParams& params) {
    const auto ops = build_gll(params);
    const std::vector<AffineOp> v{ops.A, ops.B, ops.Ap, ops.Bp};
    const std::vector<CommutationRelation> expected{{0, 1, 1.0}, {2, 3, 1.0}, {0, 2, 0.0},
                                                    {0, 3, 0.0}, {1, 2, 0.0}, {1, 3, 0.0}};
    return verify_commutation_table(v, expected).max_residual;
}

double canonical_commutator_residual(const GLLParams& params) {
    constexpr Complex i{0.0, 1.0};
    const auto c = build_gll_canonical(params);
    const std::vector<AffineOp> v{c.Q, c.P, c.Qp, c.Pp};
    const std::vector<CommutationRelation> expected{{0, 1, i},   {2, 3, i},   {0, 2, 0.0},
                                                    {0, 3, 0.0}, {1, 2, 0.0}, {1, 3, 0.0}};
    return verify_commutation_table(v, expected).max_residual;
}

double closed_form_residual(const GLLParams& params, const FamilyTable& fam, int cap) {
    double worst = 0.0;
    for (int n = 0; n <= std::min(cap, fam.nmax); ++n)
        worst = std::max(worst,
                         relative_l2_distance(fam.phi[n][0], closed_form_phi_n0(params, n)));
    for (int l = 0; l <= std::min(cap, fam.lmax); ++l)
        worst = std::max(worst,
                         relative_l2_distance(fam.phi[0][l], closed_form_phi_0l(params, l)));
    for (int n = 0; n <= std::min(cap, fam.nmax); ++n)
        worst = std::max(worst,
                         relative_l2_distance(fam.psi[n][0], closed_form_psi_n0(params, n)));
    for (int l = 0; l <= std::min(cap, fam.lmax); ++l)
        worst = std::max(worst,
                         relative_l2_distance(fam.psi[0][l], closed_form_psi_0l(params, l)));
    return worst;
}

std::vector<std::string> family_labels(int nmax, int lmax) {
    std::vector<std::string> labels;
    for (int n = 0; n <= nmax; ++n)
        for (int l = 0; l <= lmax; ++l) labels.push_back(std::to_string(n) + "." + std::to_string(l));
    return labels;
}

ordered_json config_echo(const RunConfig& cfg, std::optional<Complex> resolved_delta) {
    ordered_json j;
    j["command"] = cfg.command;
    j["k1"] = cfg.k1;
    j["k2"] = cfg.k2;
    j["nmax"] = cfg.nmax;
    j["lmax"] = cfg.lmax;
    j["z"] = cjson(cfg.z);
    j["zp"] = cjson(cfg.zp);
    j["nodes"] = cfg.nodes;
    j["scale"] = cfg.scale;
    j["m"] = cfg.m;
    j["gamma"] = cfg.gamma;
    j["k"] = cfg.k;
    j["Gamma"] = cjson(cfg.Gamma);
    if (resolved_delta)
        j["delta"] = cjson(*resolved_delta);
    else if (cfg.delta)
        j["delta"] = cjson(*cfg.delta);
    else
        j["delta"] = nullptr;
    j["n"] = cfg.n;
    j["seed"] = cfg.seed;
    j["tol"] = cfg.tolerance();
    j["timing"] = cfg.timing;
    j["output"] = cfg.output;
    j["format"] = cfg.format;
    return j;
}

Report finish(const CheckList& checks, ordered_json body) {
    Report rep;
    body["checks"] = checks.json();
    ordered_json summary;
    int pass = 0, info = 0;
    for (const auto& c : body["checks"]) {
        const auto s = c["status"].get<std::string>();
        if (s == "pass") ++pass;
        if (s == "info") ++info;
    }
    summary["pass"] = pass;
    summary["fail"] = checks.failures();
    summary["info"] = info;
    body["summary"] = std::move(summary);
    rep.body = std::move(body);
    rep.failures = checks.failures();
    return rep;
}

ordered_json report_head(const RunConfig& cfg, std::optional<Complex> resolved_delta = {}) {
    ordered_json body;
    body["schema"] = kReportSchema;
    body["version"] = kArtifactVersion;
    body["command"] = cfg.command;
    body["config"] = config_echo(cfg, resolved_delta);
    return body;
}

Report run_gll_verify(const RunConfig& cfg, bool baseline) {
    const double tol = cfg.tolerance();
    const GLLParams params =
        baseline ? GLLParams::standard(0.0, 0.0) : GLLParams::standard(cfg.k1, cfg.k2);
    CheckList checks(cfg.timing);
    ordered_json body = report_head(cfg);

    checks.check("pseudo-bosonic commutation table", "Eq.417", gll_commutator_residual(params),
                 1e-14);
    checks.check("deformed canonical commutation table", "Eq.412",
                 canonical_commutator_residual(params), 1e-14);
    checks.check("vacuum annihilation and overlap", "Eq.420", vacuum_residuals(params), tol);

    const FamilyTable fam = generate_family(params, cfg.nmax, cfg.lmax);
    const ComplexMatrix gram = biorthogonality_matrix(fam);
    checks.check("biorthogonality", "Eq.422", max_off_kronecker_residual(gram), tol);

    const EigenResidualTable eig = eigen_residuals(fam);
    checks.check("number-operator eigenvalues", "Eq.416", eig.max_relative, tol);

    checks.check("edge closed forms", "Eq.424", closed_form_residual(params, fam, 8), tol);

    const MetricReport metric = metric_ops_check(params, fam, unsigned(cfg.seed));
    checks.check("T_phi family reproduction", "Eq.426", metric.t_phi_residual_max, tol);
    checks.check("T_psi family reproduction", "Eq.428", metric.t_psi_residual_max, tol);
    checks.check("S_phi maps psi to phi", "Eq.430", metric.s_map_residual_max, tol);
    checks.check("S maps are mutually inverse", "Eq.214", metric.s_inverse_residual_max, tol);
    checks.check("T intertwining", "Eq.427", metric.intertwine_t_residual_max, tol);
    checks.check("S intertwining of number operators", "Eq.219",
                 metric.intertwine_s_residual_max, tol);

    const auto sp_report = check_superpotential_constraints(model_superpotential(params.k1, params.k2));
    checks.check("superpotential constraints", "Eq.413", sp_report.max_coeff, 1e-14);

    const int cdeg = std::min({6, cfg.nmax, cfg.lmax});
    checks.check("monomial completeness surrogate", "Eq.422",
                 monomial_reconstruction(fam, cdeg).max_residual, 1e-8);

    const RieszDiagnostic riesz = riesz_diagnostic(fam);
    checks.info("norm growth diagnostic", "Eq.430", riesz.r.back());
    body["r_sequence"] = riesz.r;
    body["verdict"] = riesz.verdict;

    if (baseline) {
        double worst = 0.0;
        for (int n = 0; n <= fam.nmax; ++n)
            for (int l = 0; l <= fam.lmax; ++l)
                worst = std::max(worst, relative_l2_distance(fam.phi[n][l], fam.psi[n][l]));
        checks.check("phi equals psi at k = 0", "Eq.420", worst, tol);

        double rmax = 0.0;
        for (double r : riesz.r) rmax = std::max(rmax, std::abs(r - 1.0));
        checks.check("r sequence constant 1", "Eq.430", rmax, tol);

        const auto grid = QuadratureGrid4D::gauss_hermite(std::min(cfg.nodes, 16), cfg.scale);
        const auto [phi00, psi00] = vacuum_pair(params);
        const PolyGauss xphi = mul_x(phi00);
        const Complex i1 = roi_pairing(params, phi00, phi00, grid);
        const Complex i2 = roi_pairing(params, phi00, xphi, grid);
        const double roi_err = std::max(std::abs(i1 - inner_product(phi00, phi00)),
                                        std::abs(i2 - inner_product(phi00, xphi)));
        checks.check("resolution of identity at k = 0", "Eq.433", roi_err, 1e-4);
    }

    Report rep = finish(checks, std::move(body));
    rep.gram = gram;
    rep.gram_labels = family_labels(cfg.nmax, cfg.lmax);
    return rep;
}

Report run_gll_coherent(const RunConfig& cfg) {
    const double tol = cfg.tolerance();
    const GLLParams params = GLLParams::standard(cfg.k1, cfg.k2);
    CheckList checks(cfg.timing);
    ordered_json body = report_head(cfg);

    const BicoherentPair bc = bicoherent_pair(params, cfg.z, cfg.zp);
    const BicoherentResiduals res = bicoherent_residuals(bc);
    checks.check("lowering eigenvalue equations", "Eq.431",
                 std::max({res.a, res.ap, res.b_dag, res.bp_dag}), tol);
    checks.check("pair normalization", "Eq.432", res.overlap_offset, tol);

    const int N = std::min(cfg.nmax, cfg.lmax);
    const FamilyTable fam = generate_family(params, cfg.nmax, cfg.lmax);
    const SeriesVsClosed svc = series_vs_closed(fam, cfg.z, cfg.zp, N);
    checks.info("series vs closed, labels (zp, z)", "Eq.33", svc.dist_z1_is_zp);
    checks.info("series vs closed, labels (z, zp)", "Eq.33", svc.dist_z1_is_z);

    body["z"] = cjson(cfg.z);
    body["zp"] = cjson(cfg.zp);
    ordered_json eig;
    eig["a"] = res.a;
    eig["ap"] = res.ap;
    eig["b_dag"] = res.b_dag;
    eig["bp_dag"] = res.bp_dag;
    body["eigen_residuals"] = std::move(eig);
    body["overlap"] = to_json(res.overlap);
    body["overlap_offset"] = res.overlap_offset;
    body["phi_t"] = to_json(bc.phi_t);
    body["psi_t"] = to_json(bc.psi_t);
    ordered_json svcj;
    svcj["series_N"] = N;
    svcj["dist_z1_is_zp"] = svc.dist_z1_is_zp;
    svcj["dist_z1_is_z"] = svc.dist_z1_is_z;
    body["series_vs_closed"] = std::move(svcj);
    return finish(checks, std::move(body));
}

Report run_gll_roi(const RunConfig& cfg) {
    const double tol = cfg.tolerance();
    const GLLParams params = GLLParams::standard(cfg.k1, cfg.k2);
    CheckList checks(cfg.timing);
    ordered_json body = report_head(cfg);

    const auto grid = QuadratureGrid4D::gauss_hermite(cfg.nodes, cfg.scale);
    const QuadExponent e_sll{0.25, 0.25, 0.0, 0.0, 0.0, 0.0};
    ordered_json pairs = ordered_json::array();
    for (int i = 0; i < 5; ++i) {
        const PolyGauss f = seeded_polygauss(cfg.seed, 2 * i, 2, e_sll);
        const PolyGauss g = seeded_polygauss(cfg.seed, 2 * i + 1, 2, e_sll);
        const Complex value = roi_pairing(params, f, g, grid);
        const Complex target = inner_product(f, g);
        const double err = std::abs(value - target);
        checks.check("weak resolution of identity, pair " + std::to_string(i), "Eq.433", err,
                     tol * (1.0 + std::abs(target)));
        ordered_json p;
        p["nodes"] = grid.nodes_per_axis;
        p["scale"] = grid.scale;
        p["value_re"] = value.real();
        p["value_im"] = value.imag();
        p["target_re"] = target.real();
        p["target_im"] = target.imag();
        p["abs_err"] = err;
        pairs.push_back(std::move(p));
    }
    body["roi_pairs"] = std::move(pairs);
    return finish(checks, std::move(body));
}

Report run_dho_check(const RunConfig& cfg) {
    DHOParams params{cfg.m, cfg.gamma, cfg.k, cfg.Gamma, Complex{0.0, 1.0}};
    if (cfg.delta) {
        params.delta = *cfg.delta;
    } else {
        const DHOParams probe{cfg.m, cfg.gamma, cfg.k, Complex{1.0, 0.0}, Complex{0.0, 1.0}};
        params.delta = solve_ratio_constraint(derive(probe).omega_plus, cfg.Gamma, 1.0);
    }
    params.validate();

    CheckList checks(cfg.timing);
    ordered_json body = report_head(cfg, params.delta);

    const DHOOps ops = build_dho(params);
    const DHOAlgebraReport alg = dho_algebra_check(params);
    checks.check("pseudo-bosonic commutation table", "Eq.53", alg.commutator_residual_max, 1e-14);
    checks.check("conjugation b_pm = adjoint(a_mp)", "Eq.53", alg.conjugation_residual, 1e-14);
    checks.check("canonical quadrature commutators", "Eq.52", alg.canonical_residual_max, 1e-14);
    checks.check("compatibility adjoints", "Eq.54", alg.compatibility_residual, 1e-14);

    const RatioCheck rc = ratio_constraint(params, 1e-10);
    checks.check("eigenvalue-ratio phase condition", "Eq.56", rc.residual, 1e-10);

    double re1 = 0.0, re2 = 0.0, annih = 0.0;
    bool normalizable = false;
    if (rc.holds) {
        const VacuumFeasibility vf = vacuum_feasibility(params);
        re1 = vf.re1;
        re2 = vf.re2;
        normalizable = vf.normalizable;
        annih = vf.annihilation_residual;
        checks.check("formal vacuum annihilation", "Eq.56", annih, 1e-12);
        checks.check_bool("vacuum not normalizable (predicted obstruction)", "Eq.56",
                          !vf.normalizable);
    }

    std::vector<PolyGauss> samples;
    for (int i = 0; i < 5; ++i)
        samples.push_back(
            seeded_polygauss(cfg.seed, 100 + i, 3, QuadExponent{0.5, 0.5, 0.0, 0.0, 0.0, 0.0}));
    const double ham = hamiltonian_identity_check(params, samples);
    checks.check("hamiltonian identity on samples", "Eq.53", ham, 1e-10);

    const DHODerived& d = ops.derived;
    body["Omega"] = d.Omega;
    body["omega_plus"] = cjson(d.omega_plus);
    body["omega_minus"] = cjson(d.omega_minus);
    ordered_json opsj;
    opsj["a_plus"] = to_json(ops.a_plus);
    opsj["a_minus"] = to_json(ops.a_minus);
    opsj["b_plus"] = to_json(ops.b_plus);
    opsj["b_minus"] = to_json(ops.b_minus);
    body["operators"] = std::move(opsj);
    body["commutator_residual_max"] = alg.commutator_residual_max;
    body["conjugation_ok"] = alg.conjugation_ok;
    body["ratio_residual"] = rc.residual;
    body["re1"] = re1;
    body["re2"] = re2;
    body["normalizable"] = normalizable;
    body["hamiltonian_residual_max"] = ham;
    return finish(checks, std::move(body));
}

Report run_dho_sweep(const RunConfig& cfg) {
    CheckList checks(cfg.timing);
    ordered_json body = report_head(cfg);

    const DHOSweepResult res = pseudoboson::run_dho_sweep(cfg.n, cfg.seed);
    checks.check_bool("vacuum non-normalizable in all cases", "Eq.56",
                      res.normalizable_false == res.total);
    checks.check("commutation tables over the sweep", "Eq.53", res.max_commutator_residual,
                 1e-14);
    checks.check("formal annihilation over the sweep", "Eq.56", res.max_annihilation_residual,
                 1e-12);
    checks.check("hamiltonian identity over the sweep", "Eq.53", res.max_hamiltonian_residual,
                 1e-10);

    body["cases"] = res.total;
    body["normalizable_false"] = res.normalizable_false;
    body["max_commutator_residual"] = res.max_commutator_residual;
    body["max_conjugation_residual"] = res.max_conjugation_residual;
    body["max_ratio_residual"] = res.max_ratio_residual;
    body["max_annihilation_residual"] = res.max_annihilation_residual;
    body["max_hamiltonian_residual"] = res.max_hamiltonian_residual;
    return finish(checks, std::move(body));
}

}  // namespace

double RunConfig::tolerance() const { return tol ? *tol : default_tol(command); }

void RunConfig::validate() const {
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw ConfigError("unknown command '" + command + "'");
    auto fin = [](double v) { return std::isfinite(v); };
    if (!fin(k1) || !fin(k2) || k1 <= -0.5 || k1 >= 0.5 || k2 <= -0.5 || k2 >= 0.5)
        throw ConfigError("k1, k2 must lie in (-1/2, 1/2)");
    if (nmax < 0 || nmax > 24 || lmax < 0 || lmax > 24)
        throw ConfigError("nmax, lmax must lie in [0, 24]");
    if (!is_finite(z) || !is_finite(zp)) throw ConfigError("z, zp must be finite");
    if (nodes < 8 || nodes > 64) throw ConfigError("nodes must lie in [8, 64]");
    if (!fin(scale) || scale <= 0.0) throw ConfigError("scale must be positive");
    if (!fin(m) || m <= 0.0) throw ConfigError("m must be positive");
    if (!fin(gamma) || gamma < 0.0) throw ConfigError("gamma must be non-negative");
    if (!fin(k) || k <= 0.0) throw ConfigError("k must be positive");
    if (command == "dho-check" || command == "dho-sweep") {
        if (k < gamma * gamma / (4.0 * m)) throw ConfigError("requires k >= gamma^2/(4m)");
    }
    if (!is_finite(Gamma) || std::abs(Gamma) == 0.0) throw ConfigError("Gamma must be non-zero");
    if (delta && (!is_finite(*delta) || std::abs(*delta) == 0.0))
        throw ConfigError("delta must be non-zero when given");
    if (n < 1 || n > 1000000) throw ConfigError("n must lie in [1, 1000000]");
    if (tol && (!fin(*tol) || *tol <= 0.0)) throw ConfigError("tol must be positive");
    if (format != "json" && format != "csv" && format != "both")
        throw ConfigError("format must be json, csv or both");
    if ((format == "csv" || format == "both") && output.empty())
        throw ConfigError("csv output requires --output");
}

void apply_json_config(RunConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "command") cfg.command = value.get<std::string>();
        else if (key == "k1") cfg.k1 = value.get<double>();
        else if (key == "k2") cfg.k2 = value.get<double>();
        else if (key == "nmax") cfg.nmax = value.get<int>();
        else if (key == "lmax") cfg.lmax = value.get<int>();
        else if (key == "z") cfg.z = complex_from_json(value, key);
        else if (key == "zp") cfg.zp = complex_from_json(value, key);
        else if (key == "nodes") cfg.nodes = value.get<int>();
        else if (key == "scale") cfg.scale = value.get<double>();
        else if (key == "m") cfg.m = value.get<double>();
        else if (key == "gamma") cfg.gamma = value.get<double>();
        else if (key == "k") cfg.k = value.get<double>();
        else if (key == "Gamma") cfg.Gamma = complex_from_json(value, key);
        else if (key == "delta") cfg.delta = value.is_null() ? std::optional<Complex>{}
                                                             : complex_from_json(value, key);
        else if (key == "n") cfg.n = value.get<int>();
        else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
        else if (key == "tol") cfg.tol = value.get<double>();
        else if (key == "timing") cfg.timing = value.get<bool>();
        else if (key == "output") cfg.output = value.get<std::string>();
        else if (key == "format") cfg.format = value.get<std::string>();
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

Report run(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.command == "gll-verify") return run_gll_verify(cfg, false);
    if (cfg.command == "sll-baseline") return run_gll_verify(cfg, true);
    if (cfg.command == "gll-coherent") return run_gll_coherent(cfg);
    if (cfg.command == "gll-roi") return run_gll_roi(cfg);
    if (cfg.command == "dho-check") return run_dho_check(cfg);
    return run_dho_sweep(cfg);
}

namespace {

void render(const nlohmann::ordered_json& j, std::string& out, int depth) {
    const std::string pad(2 * std::size_t(depth), ' ');
    const std::string pad_in(2 * std::size_t(depth + 1), ' ');
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + nlohmann::json(key).dump() + ": ";
                render(value, out, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) { out += "[]"; return; }
            out += "[\n";
            bool first = true;
            for (const auto& value : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                render(value, out, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) { out += "null"; return; }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string render_json(const nlohmann::ordered_json& j) {
    std::string out;
    render(j, out, 0);
    out += "\n";
    return out;
}

std::string render_gram_csv(const ComplexMatrix& g, const std::vector<std::string>& labels) {
    if (int(labels.size()) != g.rows || g.rows != g.cols)
        throw Error("render_gram_csv: label/matrix size mismatch");
    std::string out = "n.l";
    for (const auto& lab : labels) out += "," + lab;
    out += "\n";
    char buf[96];
    for (int r = 0; r < g.rows; ++r) {
        out += labels[r];
        for (int c = 0; c < g.cols; ++c) {
            const Complex v = g.at(r, c);
            std::snprintf(buf, sizeof buf, ",%.17g%+.17gj", v.real(), v.imag());
            out += buf;
        }
        out += "\n";
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
        f << content;
        if (!f.good()) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "': " + ec.message());
}

Complex parse_complex(const std::string& text) {
    try {
        std::size_t pos = 0;
        const double re = std::stod(text, &pos);
        if (pos == text.size()) return Complex(re, 0.0);
        if (text[pos] != ',') throw ConfigError("bad complex literal '" + text + "'");
        std::size_t pos2 = 0;
        const std::string rest = text.substr(pos + 1);
        const double im = std::stod(rest, &pos2);
        if (pos2 != rest.size()) throw ConfigError("bad complex literal '" + text + "'");
        return Complex(re, im);
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad complex literal '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("bad complex literal '" + text + "'");
    }
}

}  // namespace pseudoboson
