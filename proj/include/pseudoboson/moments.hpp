#pragma once

#include <span>
#include <vector>

#include "pseudoboson/parallel.hpp"
#include "pseudoboson/poly_gauss.hpp"

namespace pseudoboson {

// Table of moments table[p][q] = \int x^p y^q exp(E) dx dy, 0 <= p <= px,
// 0 <= q <= qy.  Built from the base integral by the exact two-term
// recurrence obtained from d/dx and d/dy integration by parts (equivalent to
// repeated differentiation with respect to the linear coefficients).
std::vector<std::vector<Complex>> gaussian_moments(const QuadExponent& e, int px, int qy);

// <f, g> = \int conj(f) g, conjugate-linear in the FIRST slot (physics
// convention, fixed project-wide).  Throws NotIntegrableError when the
// combined exponent conj(f.e) + g.e is not integrable.
Complex inner_product(const PolyGauss& f, const PolyGauss& g);

double l2_norm(const PolyGauss& f);

// ||f - g|| across different exponents via ||f||^2 + ||g||^2 - 2 Re<f,g>,
// clamped at zero.
double l2_distance(const PolyGauss& f, const PolyGauss& g);
double relative_l2_distance(const PolyGauss& f, const PolyGauss& g);

struct ComplexMatrix {
    int rows = 0, cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c) {}
    Complex& at(int r, int c) { return data[std::size_t(r) * cols + c]; }
    const Complex& at(int r, int c) const { return data[std::size_t(r) * cols + c]; }
};

// G[r][c] = <left[r], right[c]>.  Entries are independent, so the parallel
// fill is bitwise-identical to the serial reference.
ComplexMatrix gram_matrix(std::span<const PolyGauss> left, std::span<const PolyGauss> right,
                          Exec exec = Exec::parallel);
ComplexMatrix gram_matrix_serial(std::span<const PolyGauss> left,
                                 std::span<const PolyGauss> right);

}  // namespace pseudoboson
