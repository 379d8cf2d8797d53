#include "pseudoboson/quad_exponent.hpp"

#include <cmath>
#include <numbers>

namespace pseudoboson {

bool approx_equal(const QuadExponent& a, const QuadExponent& b, double tol) {
    auto close = [tol](Complex x, Complex y) { return std::abs(x - y) <= tol; };
    return close(a.qxx, b.qxx) && close(a.qyy, b.qyy) && close(a.qxy, b.qxy) &&
           close(a.lx, b.lx) && close(a.ly, b.ly) && close(a.c, b.c);
}

Complex gaussian_base_integral(const QuadExponent& e) {
    e.require_finite();
    if (!e.integrable())
        throw NotIntegrableError("gaussian_base_integral: real-part matrix not positive definite");

    const Complex det = e.qxx * e.qyy - 0.25 * e.qxy * e.qxy;
    const double det_r =
        e.qxx.real() * e.qyy.real() - 0.25 * e.qxy.real() * e.qxy.real();

    // det M = det Mr * det(I + i K); the second factor has argument in (-pi, pi).
    const Complex sqrt_det = std::sqrt(det_r) * std::sqrt(det / det_r);

    const Complex quad =
        (e.qyy * e.lx * e.lx - e.qxy * e.lx * e.ly + e.qxx * e.ly * e.ly) / (4.0 * det);
    return std::numbers::pi * std::exp(quad + e.c) / sqrt_det;
}

}  // namespace pseudoboson
