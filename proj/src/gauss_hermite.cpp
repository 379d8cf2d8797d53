#include "pseudoboson/gauss_hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pseudoboson {

// Newton iteration on the orthonormal Hermite recurrence; roots found from
// the largest down, each seeded from asymptotic estimates.
GaussHermiteRule gauss_hermite_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite_rule: n must be positive");
    GaussHermiteRule rule;
    rule.x.assign(n, 0.0);
    rule.w.assign(n, 0.0);

    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0)
            z = std::sqrt(double(2 * n + 1)) - 1.85575 * std::pow(double(2 * n + 1), -1.0 / 6.0);
        else if (i == 1)
            z -= 1.14 * std::pow(double(n), 0.426) / z;
        else if (i == 2)
            z = 1.86 * z - 0.86 * rule.x[0];
        else if (i == 3)
            z = 1.91 * z - 0.91 * rule.x[1];
        else
            z = 2.0 * z - rule.x[i - 2];

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(double(j - 1) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
        }
        rule.x[i] = z;
        rule.x[n - 1 - i] = -z;
        rule.w[i] = 2.0 / (pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;

    // nodes ascending
    for (int i = 0; i < n / 2; ++i) {
        std::swap(rule.x[i], rule.x[n - 1 - i]);
        std::swap(rule.w[i], rule.w[n - 1 - i]);
    }
    return rule;
}

}  // namespace pseudoboson
