#pragma once

#include <span>
#include <vector>

#include "pseudoboson/poly_gauss.hpp"

namespace pseudoboson {

// First-order differential operator c0 + cx x + cy y + cdx d/dx + cdy d/dy.
// The commutator of two such operators is the central scalar
// (cdx1 cx2 - cx1 cdx2) + (cdy1 cy2 - cy1 cdy2), so every ladder relation of
// the models reduces to coefficient arithmetic.
struct AffineOp {
    Complex c0{}, cx{}, cy{}, cdx{}, cdy{};

    void require_finite() const {
        if (!(is_finite(c0) && is_finite(cx) && is_finite(cy) && is_finite(cdx) &&
              is_finite(cdy)))
            throw NonFiniteError("AffineOp: non-finite coefficient");
    }
};

inline AffineOp operator+(const AffineOp& a, const AffineOp& b) {
    return {a.c0 + b.c0, a.cx + b.cx, a.cy + b.cy, a.cdx + b.cdx, a.cdy + b.cdy};
}
inline AffineOp operator-(const AffineOp& a, const AffineOp& b) {
    return {a.c0 - b.c0, a.cx - b.cx, a.cy - b.cy, a.cdx - b.cdx, a.cdy - b.cdy};
}
inline AffineOp operator*(Complex s, const AffineOp& a) {
    return {s * a.c0, s * a.cx, s * a.cy, s * a.cdx, s * a.cdy};
}

double coeff_distance(const AffineOp& a, const AffineOp& b);

// Formal adjoint on the Gaussian-dense domain: conjugates the multiplicative
// coefficients, negate-conjugates the derivative ones.  An exact involution.
AffineOp adjoint(const AffineOp& L);

Complex commutator_scalar(const AffineOp& L1, const AffineOp& L2);

PolyGauss apply_affine(const AffineOp& L, const PolyGauss& f);

// Right-to-left application: ops = {L1, L2} computes L1 (L2 f).  Products
// like N = BA are realized this way instead of through a second-order
// operator type.
PolyGauss apply_product(std::span<const AffineOp> ops, const PolyGauss& f);

struct CommutationRelation {
    int left = 0, right = 0;  // indices into the operator list
    Complex expected{};
};

struct CommutationReport {
    std::vector<CommutationRelation> relations;
    std::vector<Complex> computed;
    std::vector<double> residuals;
    double max_residual = 0.0;
};

CommutationReport verify_commutation_table(std::span<const AffineOp> ops,
                                           std::span<const CommutationRelation> expected);

}  // namespace pseudoboson
