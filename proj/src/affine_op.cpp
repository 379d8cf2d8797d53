#include "pseudoboson/affine_op.hpp"

#include <cmath>

namespace pseudoboson {

double coeff_distance(const AffineOp& a, const AffineOp& b) {
    return std::sqrt(std::norm(a.c0 - b.c0) + std::norm(a.cx - b.cx) + std::norm(a.cy - b.cy) +
                     std::norm(a.cdx - b.cdx) + std::norm(a.cdy - b.cdy));
}

AffineOp adjoint(const AffineOp& L) {
    return {std::conj(L.c0), std::conj(L.cx), std::conj(L.cy), -std::conj(L.cdx),
            -std::conj(L.cdy)};
}

Complex commutator_scalar(const AffineOp& L1, const AffineOp& L2) {
    return (L1.cdx * L2.cx - L1.cx * L2.cdx) + (L1.cdy * L2.cy - L1.cy * L2.cdy);
}

PolyGauss apply_affine(const AffineOp& L, const PolyGauss& f) {
    L.require_finite();
    PolyGauss out(CoeffMap{}, f.exponent());
    if (L.c0 != 0.0) out = add(out, scale(f, L.c0));
    if (L.cx != 0.0) out = add(out, scale(mul_x(f), L.cx));
    if (L.cy != 0.0) out = add(out, scale(mul_y(f), L.cy));
    if (L.cdx != 0.0) out = add(out, scale(ddx(f), L.cdx));
    if (L.cdy != 0.0) out = add(out, scale(ddy(f), L.cdy));
    return out;
}

PolyGauss apply_product(std::span<const AffineOp> ops, const PolyGauss& f) {
    PolyGauss out = f;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) out = apply_affine(*it, out);
    return out;
}

CommutationReport verify_commutation_table(std::span<const AffineOp> ops,
                                           std::span<const CommutationRelation> expected) {
    CommutationReport rep;
    for (const auto& rel : expected) {
        if (rel.left < 0 || rel.right < 0 || rel.left >= int(ops.size()) ||
            rel.right >= int(ops.size()))
            throw IndexOutOfRangeError("verify_commutation_table: index out of range");
        const Complex got = commutator_scalar(ops[rel.left], ops[rel.right]);
        const double res = std::abs(got - rel.expected);
        rep.relations.push_back(rel);
        rep.computed.push_back(got);
        rep.residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

}  // namespace pseudoboson
