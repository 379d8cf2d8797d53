#include "pseudoboson/moments.hpp"

#include <algorithm>
#include <cmath>

namespace pseudoboson {

std::vector<std::vector<Complex>> gaussian_moments(const QuadExponent& e, int px, int qy) {
    std::vector<std::vector<Complex>> t(px + 1, std::vector<Complex>(qy + 1));
    t[0][0] = gaussian_base_integral(e);

    // From \int d/dx [x^m y^n exp(E)] = 0 and the y analogue:
    //   2 qxx I[m+1][n] + qxy I[m][n+1] = m I[m-1][n] + lx I[m][n]
    //   qxy I[m+1][n] + 2 qyy I[m][n+1] = n I[m][n-1] + ly I[m][n]
    // Solving the 2x2 system for the pair of next-order moments gives each
    // entry from strictly lower total order.
    const Complex det4 = 4.0 * (e.qxx * e.qyy - 0.25 * e.qxy * e.qxy);
    auto fill = [&](int m, int n, bool want_x) {
        const Complex im1n = (m > 0) ? t[m - 1][n] : Complex{};
        const Complex imn1 = (n > 0) ? t[m][n - 1] : Complex{};
        const Complex r1 = double(m) * im1n + e.lx * t[m][n];
        const Complex r2 = double(n) * imn1 + e.ly * t[m][n];
        if (want_x)
            t[m + 1][n] = (2.0 * e.qyy * r1 - e.qxy * r2) / det4;
        else
            t[m][n + 1] = (2.0 * e.qxx * r2 - e.qxy * r1) / det4;
    };
    for (int total = 0; total < px + qy; ++total) {
        for (int m = std::min(total, px); m >= std::max(0, total - qy); --m) {
            const int n = total - m;
            if (m + 1 <= px && n <= qy) fill(m, n, true);
            if (m == 0 && n + 1 <= qy) fill(m, n, false);
        }
    }
    return t;
}

Complex inner_product(const PolyGauss& f, const PolyGauss& g) {
    const QuadExponent combined = f.exponent().conjugated() + g.exponent();
    if (!combined.integrable())
        throw NotIntegrableError("inner_product: combined exponent not integrable");
    if (f.is_zero() || g.is_zero()) return 0.0;

    int px = 0, qy = 0;
    for (const auto& [k, v] : f.coeffs()) px = std::max(px, k.first), qy = std::max(qy, k.second);
    int gx = 0, gy = 0;
    for (const auto& [k, v] : g.coeffs()) gx = std::max(gx, k.first), gy = std::max(gy, k.second);
    const auto mom = gaussian_moments(combined, px + gx, qy + gy);

    Complex acc = 0.0;
    for (const auto& [ka, va] : f.coeffs()) {
        const Complex cva = std::conj(va);
        for (const auto& [kb, vb] : g.coeffs())
            acc += cva * vb * mom[ka.first + kb.first][ka.second + kb.second];
    }
    return acc;
}

double l2_norm(const PolyGauss& f) {
    if (f.is_zero()) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

double l2_distance(const PolyGauss& f, const PolyGauss& g) {
    // Same-exponent case (up to roundoff in the exponent entries): take the
    // norm of the coefficient difference.  The cross-exponent formula below
    // squares the norms and cancels, which floors the result near
    // sqrt(eps) * ||f||; that floor would mask residuals of interest.
    if (approx_equal(f.exponent(), g.exponent(), 1e-13)) {
        CoeffMap diff = f.coeffs();
        for (const auto& [k, v] : g.coeffs()) {
            auto [it, inserted] = diff.emplace(k, -v);
            if (!inserted) it->second -= v;
        }
        return l2_norm(PolyGauss(std::move(diff), f.exponent()));
    }
    const double a = inner_product(f, f).real();
    const double b = inner_product(g, g).real();
    const double cross = inner_product(f, g).real();
    return std::sqrt(std::max(0.0, a + b - 2.0 * cross));
}

double relative_l2_distance(const PolyGauss& f, const PolyGauss& g) {
    const double ref = std::max(l2_norm(f), l2_norm(g));
    if (ref == 0.0) return 0.0;
    return l2_distance(f, g) / ref;
}

ComplexMatrix gram_matrix(std::span<const PolyGauss> left, std::span<const PolyGauss> right,
                          Exec exec) {
    ComplexMatrix m(int(left.size()), int(right.size()));
    parallel_for(exec, left.size() * right.size(), [&](std::size_t idx) {
        const std::size_t r = idx / right.size(), c = idx % right.size();
        m.data[idx] = inner_product(left[r], right[c]);
    });
    return m;
}

ComplexMatrix gram_matrix_serial(std::span<const PolyGauss> left,
                                 std::span<const PolyGauss> right) {
    ComplexMatrix m(int(left.size()), int(right.size()));
    for (std::size_t r = 0; r < left.size(); ++r)
        for (std::size_t c = 0; c < right.size(); ++c)
            m.at(int(r), int(c)) = inner_product(left[r], right[c]);
    return m;
}

}  // namespace pseudoboson
