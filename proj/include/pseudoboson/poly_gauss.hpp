#pragma once

#include <map>
#include <utility>
#include <variant>

#include "pseudoboson/quad_exponent.hpp"

namespace pseudoboson {

// Hard cap on total polynomial degree; exceeding it is an error, never a
// silent truncation.
inline constexpr int kDegreeCap = 64;

// Coefficients below this magnitude are dropped from the sparse map.  In
// practice only exact zeros are produced by the algebra.
inline constexpr double kPruneThreshold = 1e-300;

using MonomialKey = std::pair<int, int>;  // (x power, y power)
using CoeffMap = std::map<MonomialKey, Complex>;

// P(x,y) * exp(quadratic exponent), P a sparse complex bivariate polynomial.
// The class is closed under x/y multiplication, d/dx, d/dy, conjugation and
// pointwise products, which is everything the ladder operators need.
// Immutable after construction.
class PolyGauss {
public:
    PolyGauss() = default;
    PolyGauss(CoeffMap coeffs, QuadExponent exponent);

    const CoeffMap& coeffs() const { return coeffs_; }
    const QuadExponent& exponent() const { return exponent_; }

    bool is_zero() const { return coeffs_.empty(); }
    int total_degree() const;  // -1 for the zero function

    Complex eval(double x, double y) const;

private:
    CoeffMap coeffs_;
    QuadExponent exponent_;
};

PolyGauss make_polygauss(CoeffMap coeffs, QuadExponent exponent);

// Primitive moves.  All are exact in the coefficient algebra; ddx/ddy apply
// the product rule to the polynomial and the exponent.
PolyGauss scale(const PolyGauss& f, Complex s);
PolyGauss mul_x(const PolyGauss& f);
PolyGauss mul_y(const PolyGauss& f);
PolyGauss ddx(const PolyGauss& f);
PolyGauss ddy(const PolyGauss& f);
PolyGauss conjugate(const PolyGauss& f);

// Tagged dispatcher over the primitive moves.
struct OpScale { Complex s; };
struct OpMulX {};
struct OpMulY {};
struct OpDdx {};
struct OpDdy {};
struct OpConj {};
using AlgebraOp = std::variant<OpScale, OpMulX, OpMulY, OpDdx, OpDdy, OpConj>;
PolyGauss algebra_apply(const AlgebraOp& op, const PolyGauss& f);

// Same-exponent sum and pointwise product (exponents add).
PolyGauss add(const PolyGauss& f, const PolyGauss& g);
PolyGauss sub(const PolyGauss& f, const PolyGauss& g);
PolyGauss mul(const PolyGauss& f, const PolyGauss& g);

// Euclidean norm / distance of the coefficient vectors (no integral; valid
// for non-integrable exponents too).
double coeff_norm(const PolyGauss& f);
double coeff_distance(const PolyGauss& f, const PolyGauss& g);

// Equal exponent (within tol) and coefficient-wise distance below tol.
bool approx_equal(const PolyGauss& f, const PolyGauss& g, double tol = 1e-12);

}  // namespace pseudoboson
