#include "pseudoboson/poly_gauss.hpp"

#include <algorithm>
#include <cmath>

namespace pseudoboson {

namespace {

void prune(CoeffMap& m) {
    for (auto it = m.begin(); it != m.end();) {
        if (std::abs(it->second.real()) < kPruneThreshold &&
            std::abs(it->second.imag()) < kPruneThreshold)
            it = m.erase(it);
        else
            ++it;
    }
}

void check_degree(const CoeffMap& m) {
    for (const auto& [key, v] : m) {
        if (key.first < 0 || key.second < 0)
            throw Error("PolyGauss: negative monomial power");
        if (key.first + key.second > kDegreeCap)
            throw DegreeCapExceededError("PolyGauss: total degree exceeds cap");
    }
}

void accumulate(CoeffMap& m, MonomialKey key, Complex v) {
    auto [it, inserted] = m.emplace(key, v);
    if (!inserted) it->second += v;
}

}  // namespace

PolyGauss::PolyGauss(CoeffMap coeffs, QuadExponent exponent)
    : coeffs_(std::move(coeffs)), exponent_(exponent) {
    exponent_.require_finite();
    for (const auto& [key, v] : coeffs_)
        if (!is_finite(v)) throw NonFiniteError("PolyGauss: non-finite coefficient");
    check_degree(coeffs_);
    prune(coeffs_);
}

int PolyGauss::total_degree() const {
    int d = -1;
    for (const auto& [key, v] : coeffs_) d = std::max(d, key.first + key.second);
    return d;
}

Complex PolyGauss::eval(double x, double y) const {
    Complex p = 0.0;
    for (const auto& [key, v] : coeffs_)
        p += v * std::pow(x, key.first) * std::pow(y, key.second);
    const QuadExponent& e = exponent_;
    const Complex arg = -e.qxx * (x * x) - e.qyy * (y * y) - e.qxy * (x * y) +
                        e.lx * x + e.ly * y + e.c;
    return p * std::exp(arg);
}

PolyGauss make_polygauss(CoeffMap coeffs, QuadExponent exponent) {
    return PolyGauss(std::move(coeffs), exponent);
}

PolyGauss scale(const PolyGauss& f, Complex s) {
    if (!is_finite(s)) throw NonFiniteError("scale: non-finite scalar");
    CoeffMap out = f.coeffs();
    for (auto& [key, v] : out) v *= s;
    return PolyGauss(std::move(out), f.exponent());
}

PolyGauss mul_x(const PolyGauss& f) {
    CoeffMap out;
    for (const auto& [key, v] : f.coeffs()) out.emplace(MonomialKey{key.first + 1, key.second}, v);
    return PolyGauss(std::move(out), f.exponent());
}

PolyGauss mul_y(const PolyGauss& f) {
    CoeffMap out;
    for (const auto& [key, v] : f.coeffs()) out.emplace(MonomialKey{key.first, key.second + 1}, v);
    return PolyGauss(std::move(out), f.exponent());
}

PolyGauss ddx(const PolyGauss& f) {
    const QuadExponent& e = f.exponent();
    CoeffMap out;
    for (const auto& [key, v] : f.coeffs()) {
        const auto [m, n] = key;
        if (m > 0) accumulate(out, {m - 1, n}, double(m) * v);
        // dE/dx = -2 qxx x - qxy y + lx
        accumulate(out, {m + 1, n}, -2.0 * e.qxx * v);
        accumulate(out, {m, n + 1}, -e.qxy * v);
        if (e.lx != 0.0) accumulate(out, {m, n}, e.lx * v);
    }
    return PolyGauss(std::move(out), e);
}

PolyGauss ddy(const PolyGauss& f) {
    const QuadExponent& e = f.exponent();
    CoeffMap out;
    for (const auto& [key, v] : f.coeffs()) {
        const auto [m, n] = key;
        if (n > 0) accumulate(out, {m, n - 1}, double(n) * v);
        accumulate(out, {m, n + 1}, -2.0 * e.qyy * v);
        accumulate(out, {m + 1, n}, -e.qxy * v);
        if (e.ly != 0.0) accumulate(out, {m, n}, e.ly * v);
    }
    return PolyGauss(std::move(out), e);
}

PolyGauss conjugate(const PolyGauss& f) {
    CoeffMap out;
    for (const auto& [key, v] : f.coeffs()) out.emplace(key, std::conj(v));
    return PolyGauss(std::move(out), f.exponent().conjugated());
}

PolyGauss algebra_apply(const AlgebraOp& op, const PolyGauss& f) {
    return std::visit(
        [&](const auto& o) -> PolyGauss {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, OpScale>) return scale(f, o.s);
            else if constexpr (std::is_same_v<T, OpMulX>) return mul_x(f);
            else if constexpr (std::is_same_v<T, OpMulY>) return mul_y(f);
            else if constexpr (std::is_same_v<T, OpDdx>) return ddx(f);
            else if constexpr (std::is_same_v<T, OpDdy>) return ddy(f);
            else return conjugate(f);
        },
        op);
}

PolyGauss add(const PolyGauss& f, const PolyGauss& g) {
    if (!approx_equal(f.exponent(), g.exponent(), 0.0))
        throw Error("add: exponents differ");
    CoeffMap out = f.coeffs();
    for (const auto& [key, v] : g.coeffs()) accumulate(out, key, v);
    return PolyGauss(std::move(out), f.exponent());
}

PolyGauss sub(const PolyGauss& f, const PolyGauss& g) { return add(f, scale(g, -1.0)); }

PolyGauss mul(const PolyGauss& f, const PolyGauss& g) {
    CoeffMap out;
    for (const auto& [ka, va] : f.coeffs())
        for (const auto& [kb, vb] : g.coeffs())
            accumulate(out, {ka.first + kb.first, ka.second + kb.second}, va * vb);
    return PolyGauss(std::move(out), f.exponent() + g.exponent());
}

double coeff_norm(const PolyGauss& f) {
    double s = 0.0;
    for (const auto& [key, v] : f.coeffs()) s += std::norm(v);
    return std::sqrt(s);
}

double coeff_distance(const PolyGauss& f, const PolyGauss& g) {
    double s = 0.0;
    auto a = f.coeffs().begin(), b = g.coeffs().begin();
    while (a != f.coeffs().end() || b != g.coeffs().end()) {
        if (b == g.coeffs().end() || (a != f.coeffs().end() && a->first < b->first)) {
            s += std::norm(a->second);
            ++a;
        } else if (a == f.coeffs().end() || b->first < a->first) {
            s += std::norm(b->second);
            ++b;
        } else {
            s += std::norm(a->second - b->second);
            ++a, ++b;
        }
    }
    return std::sqrt(s);
}

bool approx_equal(const PolyGauss& f, const PolyGauss& g, double tol) {
    return approx_equal(f.exponent(), g.exponent(), tol) && coeff_distance(f, g) <= tol;
}

}  // namespace pseudoboson
