#pragma once

#include <array>
#include <string>
#include <vector>

#include "pseudoboson/affine_op.hpp"
#include "pseudoboson/moments.hpp"

namespace pseudoboson {

// Deformation parameters of the generalized Landau model.  k1, k2 are the
// real deformation strengths (|k| < 1/2 for square-integrable vacua); the
// four couplings satisfy alpha*gamma = alphap*gammap = 1/2.
struct GLLParams {
    double k1 = 0.0, k2 = 0.0;
    Complex alpha{}, gamma{}, alphap{}, gammap{};

    static GLLParams standard(double k1, double k2);  // all couplings 1/sqrt(2)

    void validate() const;  // throws InvalidParamsError
    bool standard_couplings(double tol = 1e-12) const;
};

// Lowering/raising quadruple of the deformed model.
struct GLLOps {
    AffineOp A, B, Ap, Bp;
};

GLLOps build_gll(const GLLParams& p);

// The same quadruple assembled through the deformed canonical operators
// (Q, P, Q', P') and the linear combinations A = alpha(Q + iP), ...; used as
// an independent construction route in tests.
struct CanonicalOps {
    AffineOp Q, P, Qp, Pp;
};
CanonicalOps build_gll_canonical(const GLLParams& p);

// Vacua with the symmetric normalization N_phi = N_psi = (2 pi)^{-1/2}, so
// that <psi00, phi00> = 1.
std::pair<PolyGauss, PolyGauss> vacuum_pair(const GLLParams& p);

struct FamilyTable {
    GLLParams params;
    int nmax = 0, lmax = 0;
    std::vector<std::vector<PolyGauss>> phi, psi;  // [n][l]
};

// phi[n][l] = B'^n B^l phi00 / sqrt(n! l!) built with incremental 1/sqrt(step)
// scaling (never forming factorials); psi via the adjoint raising operators.
// Ladder recursion is ordered in n, so parallelism is across l columns.
FamilyTable generate_family(const GLLParams& p, int nmax, int lmax, Exec exec = Exec::parallel);

// Gram matrix <psi[n][l], phi[m][k]>, rows/cols flattened as n*(lmax+1)+l.
ComplexMatrix biorthogonality_matrix(const FamilyTable& t, Exec exec = Exec::parallel);
ComplexMatrix biorthogonality_matrix_serial(const FamilyTable& t);
double max_off_kronecker_residual(const ComplexMatrix& g);

// Residuals of the number-operator eigenvalue relations on both families.
struct EigenResidualTable {
    // indexed [n][l]
    std::vector<std::vector<double>> phi_np, phi_n, psi_np, psi_n;
    double max_absolute = 0.0;
    double max_relative = 0.0;
};
EigenResidualTable eigen_residuals(const FamilyTable& t);

// Gaussian multipliers mapping the undeformed family onto the deformed ones
// and into each other.  Only defined for couplings 1/sqrt(2).
PolyGauss t_phi_multiplier(const GLLParams& p);
PolyGauss t_psi_multiplier(const GLLParams& p);
PolyGauss s_phi_multiplier(const GLLParams& p);
PolyGauss s_psi_multiplier(const GLLParams& p);

struct MetricReport {
    double t_phi_residual_max = 0.0;      // phi[n][l] vs T_phi phi0[n][l]
    double t_psi_residual_max = 0.0;      // psi[n][l] vs T_psi phi0[n][l]
    double s_map_residual_max = 0.0;      // S_phi psi[n][l] vs phi[n][l]
    double s_inverse_residual_max = 0.0;  // S_psi S_phi f vs f on samples
    double intertwine_t_residual_max = 0.0;  // B' T_phi f vs T_phi A0'^dag f
    double intertwine_s_residual_max = 0.0;  // S_psi N f vs N^dag S_psi f on the family
};
MetricReport metric_ops_check(const GLLParams& p, const FamilyTable& t, unsigned seed = 42);

struct RieszDiagnostic {
    std::vector<double> r;  // r[n] = ||phi[n][n]|| * ||psi[n][n]||
    std::string verdict;    // "Riesz-compatible" or "norm growth detected"
};
RieszDiagnostic riesz_diagnostic(const FamilyTable& t);

// Bivariate polynomial superpotential pair (plain coefficient maps).
struct SuperpotentialPair {
    CoeffMap W1, W2, V1, V2;
};

// Residual polynomials of the constraint system: the four cross relations
// W1_x - V2_y, W2_x + V2_x, W1_y + V1_y, W2_y - V1_x and the two trace
// relations V1_x + V2_y + 1, W1_x + W2_y + 1.  Satisfied iff all vanish.
struct SuperpotentialReport {
    std::array<CoeffMap, 6> residuals;
    double max_coeff = 0.0;
    bool satisfied = false;
};
SuperpotentialReport check_superpotential_constraints(const SuperpotentialPair& sp);

// The deformation used by the model and its derived partner.
SuperpotentialPair model_superpotential(double k1, double k2);

// Closed forms of the edge families: phi_{n,0} = gammap^n/sqrt(n!) (x+iy)^n phi00,
// phi_{0,l} = (i gamma)^l/sqrt(l!) (x-iy)^l phi00, and the conjugate-coupling
// analogues on the psi side.
PolyGauss closed_form_phi_n0(const GLLParams& p, int n);
PolyGauss closed_form_phi_0l(const GLLParams& p, int l);
PolyGauss closed_form_psi_n0(const GLLParams& p, int n);
PolyGauss closed_form_psi_0l(const GLLParams& p, int l);

// Finite completeness surrogate: reconstruct every x^m y^n phi00 with
// m+n <= max_deg as the exact finite combination of phi[i][j] obtained from
// the (graded-triangular) change-of-basis system.
struct CompletenessReport {
    int max_degree = 0;
    double max_residual = 0.0;
};
CompletenessReport monomial_reconstruction(const FamilyTable& t, int max_deg);

}  // namespace pseudoboson
