#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "pseudoboson/dho.hpp"
#include "pseudoboson/gll.hpp"
#include "support/generators.hpp"

using namespace pseudoboson;
using pseudoboson::testing::random_integrable_exponent;
using pseudoboson::testing::random_polygauss;

namespace {
constexpr Complex kI{0, 1};

AffineOp random_op(std::mt19937_64& rng) {
    return {testing::random_complex(rng), testing::random_complex(rng),
            testing::random_complex(rng), testing::random_complex(rng),
            testing::random_complex(rng)};
}
}  // namespace

TEST_CASE("canonical commutators") {
    const AffineOp ddx_op{0, 0, 0, 1, 0};
    const AffineOp x_op{0, 1, 0, 0, 0};
    const AffineOp y_op{0, 0, 1, 0, 0};
    CHECK(commutator_scalar(ddx_op, x_op) == Complex(1.0));
    CHECK(commutator_scalar(x_op, y_op) == Complex(0.0));
}

TEST_CASE("adjoint on basic operators") {
    const AffineOp ddx_op{0, 0, 0, 1, 0};
    CHECK(adjoint(ddx_op).cdx == Complex(-1.0));
    const AffineOp ix{0, kI, 0, 0, 0};
    CHECK(adjoint(ix).cx == -kI);

    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        const AffineOp L = random_op(rng);
        CHECK(coeff_distance(adjoint(adjoint(L)), L) == 0.0);
    }
}

TEST_CASE("annihilation of the matched Gaussian") {
    // (d/dx + x/2) e^{-x^2/4 - y^2/4} = 0
    const AffineOp L{0, 0.5, 0, 1, 0};
    const PolyGauss g(CoeffMap{{{0, 0}, 1.0}}, {0.25, 0.25, 0, 0, 0, 0});
    CHECK(apply_affine(L, g).is_zero());

    const AffineOp xop{0, 1, 0, 0, 0};
    const PolyGauss xg = apply_affine(xop, PolyGauss(CoeffMap{{{0, 0}, 1.0}}, {1, 1, 0, 0, 0, 0}));
    CHECK(xg.coeffs().count({1, 0}) == 1);
}

TEST_CASE("commutator scalar matches the action difference") {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 25; ++rep) {
        const AffineOp l1 = random_op(rng), l2 = random_op(rng);
        const PolyGauss f = random_polygauss(rng, 4);
        const PolyGauss d =
            sub(apply_affine(l1, apply_affine(l2, f)), apply_affine(l2, apply_affine(l1, f)));
        const PolyGauss expect = scale(f, commutator_scalar(l1, l2));
        CHECK(coeff_distance(d, expect) <= 1e-12 * (1.0 + coeff_norm(expect)));
    }
}

TEST_CASE("adjoint is the inner-product transpose on the Gaussian class") {
    std::mt19937_64 rng(6);
    int tested = 0;
    while (tested < 15) {
        const QuadExponent e = random_integrable_exponent(rng);
        QuadExponent e2 = e;
        e2.lx = testing::random_complex(rng);
        const PolyGauss f = random_polygauss(rng, 4, e);
        const PolyGauss g = random_polygauss(rng, 4, e2);
        const AffineOp L = random_op(rng);
        const Complex lhs = inner_product(apply_affine(adjoint(L), g), f);
        const Complex rhs = inner_product(g, apply_affine(L, f));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs)));
        ++tested;
    }
}

TEST_CASE("adjoint of the raising operator differs from the lowering partner") {
    const GLLParams p = GLLParams::standard(0.0, 0.2);
    const GLLOps ops = build_gll(p);
    CHECK(coeff_distance(adjoint(ops.B), ops.A) > 0.05);
    // while at the undeformed point they coincide
    const GLLOps sll = build_gll(GLLParams::standard(0.0, 0.0));
    CHECK(coeff_distance(adjoint(sll.B), sll.A) < 1e-15);
}

TEST_CASE("commutation tables of the three model quadruples") {
    const std::vector<CommutationRelation> unit_cross{{0, 1, 1.0}, {2, 3, 1.0}, {0, 2, 0.0},
                                                      {0, 3, 0.0}, {1, 2, 0.0}, {1, 3, 0.0}};

    const GLLOps sll = build_gll(GLLParams::standard(0.0, 0.0));
    const std::array<AffineOp, 4> sllq{sll.A, sll.B, sll.Ap, sll.Bp};
    CHECK(verify_commutation_table(sllq, unit_cross).max_residual < 1e-14);

    const GLLOps gll = build_gll(GLLParams::standard(0.2, -0.3));
    const std::array<AffineOp, 4> gllq{gll.A, gll.B, gll.Ap, gll.Bp};
    CHECK(verify_commutation_table(gllq, unit_cross).max_residual < 1e-14);

    const DHOOps dho = build_dho({1.0, 0.5, 2.0, Complex(1, 1), Complex(0, 2)});
    const std::array<AffineOp, 4> dhoq{dho.a_plus, dho.b_plus, dho.a_minus, dho.b_minus};
    CHECK(verify_commutation_table(dhoq, unit_cross).max_residual < 1e-14);

    CHECK_THROWS_AS(
        verify_commutation_table(sllq, std::vector<CommutationRelation>{{0, 7, 1.0}}),
        IndexOutOfRangeError);
}
