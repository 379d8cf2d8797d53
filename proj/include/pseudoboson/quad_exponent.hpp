#pragma once

#include <complex>

#include "pseudoboson/errors.hpp"

namespace pseudoboson {

using Complex = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Exponent of a bivariate Gaussian factor, with the sign convention
//
//   exp(-qxx x^2 - qyy y^2 - qxy xy + lx x + ly y + c)
//
// fixed once here; constructors of model states translate into it at the
// module boundary.  Integrability means the real part of the quadratic-form
// matrix M = [[Re qxx, Re qxy/2], [Re qxy/2, Re qyy]] is positive definite.
struct QuadExponent {
    Complex qxx{}, qyy{}, qxy{};
    Complex lx{}, ly{};
    Complex c{};

    QuadExponent conjugated() const {
        return {std::conj(qxx), std::conj(qyy), std::conj(qxy),
                std::conj(lx), std::conj(ly), std::conj(c)};
    }

    QuadExponent operator+(const QuadExponent& o) const {
        return {qxx + o.qxx, qyy + o.qyy, qxy + o.qxy, lx + o.lx, ly + o.ly, c + o.c};
    }

    bool integrable() const {
        const double a = qxx.real(), d = qyy.real(), b = 0.5 * qxy.real();
        return a + d > 0.0 && a * d - b * b > 0.0;
    }

    void require_finite() const {
        if (!(is_finite(qxx) && is_finite(qyy) && is_finite(qxy) &&
              is_finite(lx) && is_finite(ly) && is_finite(c)))
            throw NonFiniteError("QuadExponent: non-finite entry");
    }
};

bool approx_equal(const QuadExponent& a, const QuadExponent& b, double tol = 1e-12);

// \int_{R^2} exp(-x^T M x + L^T x + c) dx dy = pi det(M)^{-1/2} exp(L^T M^{-1} L / 4 + c).
// The determinant square root uses the branch sqrt(det Mr) * principal_sqrt(det M / det Mr),
// i.e. the principal root of det(I + i Mr^{-1/2} Mi Mr^{-1/2}); for 2x2 exponents with
// positive-definite real part this argument stays inside (-pi, pi), so the branch is
// continuous on the whole admissible range.  Throws NotIntegrableError otherwise.
Complex gaussian_base_integral(const QuadExponent& e);

}  // namespace pseudoboson
