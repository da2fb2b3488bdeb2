#include "phasequant/errors.hpp"
#include "phasequant/heat.hpp"
#include "phasequant/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace phq;

namespace {

Symbol sym(const char* s, int n = 1) { return parse_symbol_fn(s, n); }

} // namespace

TEST_SUITE("heat") {

TEST_CASE("heat examples") {
    for (const auto& X : random_points(1, 6, 2.0, 60)) {
        CHECK(std::abs(heat_apply(sym("1"), 0.7, X) - 1.0) < 1e-13);
        CHECK(std::abs(heat_apply(sym("2*gauss(1)"), 0.5, X) - std::exp(-X.sq_norm() / 2)) < 1e-12);
        for (double lam : {0.25, 1.0, 2.0})
            CHECK(std::abs(heat_apply(sym("sin(x)"), lam, X) - std::exp(-lam / 2) * std::sin(X[0])) < 1e-10);
    }
    const PhasePoint X2 = PhasePoint::of(0.3, -0.1, 0.5, 0.2);
    // H_l gauss(a) = gauss(a / (1 + 2 a l)) / (1 + 2 a l)^n
    CHECK(std::abs(heat_apply(sym("gauss(1)", 2), 0.5, X2) - std::exp(-X2.sq_norm() / 2) / 4.0) < 1e-9);
}

TEST_CASE("heat_apply_many matches pointwise application") {
    const Symbol F = sym("cos(x)*gauss(1/4)");
    const auto pts = random_points(1, 8, 1.5, 61);
    const auto many = heat_apply_many(F, 0.5, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(many[i] - heat_apply(F, 0.5, pts[i])) < 1e-9);
}

TEST_CASE("S_lambda examples") {
    CHECK(std::abs(s_apply(sym("1"), 1.0, PhasePoint::of(0, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(s_apply(sym("gauss(1/2)"), 1.0, PhasePoint::of(1, 0)) - 0.5 * std::exp(0.25)) < 1e-10);
}

TEST_CASE("T_lambda examples and involution") {
    for (const auto& Z : random_points(1, 6, 2.0, 62)) {
        CHECK(std::abs(symplectic_fourier(sym("gauss(1)"), 1.0, Z) - 0.5 * std::exp(-Z.sq_norm() / 4)) < 1e-12);
        // (2 pi l)^{-1} int e^{(i/l) sigma} over e^{-|Y|^2}: l = 2 gives e^{-|Z|^2/16} / 4
        CHECK(std::abs(symplectic_fourier(sym("gauss(1)"), 2.0, Z) - 0.25 * std::exp(-Z.sq_norm() / 16)) < 1e-12);
    }
    const auto pts = random_points(1, 6, 1.5, 63);
    for (const char* s : {"gauss(1/2)", "x*gauss(1)", "cos(xi)*gauss(1/2)"}) {
        const Symbol F = sym(s);
        const auto back = symplectic_fourier_twice(F, 1.0, pts);
        CAPTURE(s);
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(back[i] - F(pts[i])) < 1e-6);
    }
}

TEST_CASE("M_lambda") {
    const Symbol F = sym("3 + x");
    CHECK(multiplier_mlambda(F, 0.5, PhasePoint::of(0, 0)) == cplx(3.0));
    CHECK(std::abs(multiplier_mlambda(F, 0.5, PhasePoint::of(1, 1)) - 4.0 * std::exp(-2.0)) < 1e-15);
}

TEST_CASE("M S = T M for even symbols") {
    const double lam = 1.0;
    HeatOptions fo;
    fo.fourier_scale = std::sqrt(2.0 * lam);
    for (const char* s : {"gauss(1/2)", "x^2*gauss(1/2)", "cos(x)*cos(xi)*gauss(1)"}) {
        const Symbol F = sym(s);
        const Symbol MF(1, [&](const PhasePoint& Y) { return multiplier_mlambda(F, lam, Y); }, "M F");
        CAPTURE(s);
        for (const auto& X : random_points(1, 5, 1.5, 64)) {
            const cplx lhs = std::exp(-X.sq_norm() / (2 * lam)) * s_apply(F, lam, X);
            CHECK(std::abs(lhs - symplectic_fourier(MF, lam, X, fo)) < 1e-6);
        }
    }
}

TEST_CASE("M S = T M picks up a reflection for odd symbols") {
    // with these S and T sign conventions M_l S_l F (X) = (T_l M_l F)(-X)
    HeatOptions fo;
    fo.fourier_scale = std::sqrt(2.0);
    for (const char* s : {"x*gauss(1/2)", "(x + xi)*gauss(1/2)"}) {
        const Symbol F = sym(s);
        const Symbol MF(1, [&](const PhasePoint& Y) { return multiplier_mlambda(F, 1.0, Y); }, "M F");
        const PhasePoint X = PhasePoint::of(0.7, -0.4);
        const cplx lhs = std::exp(-X.sq_norm() / 2) * s_apply(F, 1.0, X);
        CHECK(std::abs(lhs - symplectic_fourier(MF, 1.0, -X, fo)) < 1e-8);
        CHECK(std::abs(lhs - symplectic_fourier(MF, 1.0, X, fo)) > 0.1);
    }
}

TEST_CASE("heat semigroup") {
    const Symbol F = sym("sin(x)*cos(xi) + gauss(1/2)");
    const Symbol H(1, [&](const PhasePoint& Y) { return heat_apply(F, 0.3, Y); }, "H F");
    const auto pts = random_points(1, 6, 1.5, 65);
    const auto twice = heat_apply_many(H, 0.7, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(twice[i] - heat_apply(F, 1.0, pts[i])) < 1e-8);
}

TEST_CASE("heat on sampled grids") {
    const Symbol F = sym("gauss(1/2)");
    const SymbolGrid g = sample_symbol(F, PhaseGrid::parse("-8:8:161,-8:8:161", 1));
    for (const auto& X : random_points(1, 5, 1.5, 66)) {
        const cplx want = std::exp(-X.sq_norm() / 3) / 1.5;
        CHECK(std::abs(heat_apply(g, 0.5, X) - want) < 5e-3);
    }
    const SymbolGrid small = sample_symbol(F, PhaseGrid::parse("-1:1:11,-1:1:11", 1));
    CHECK_THROWS_AS(heat_apply(small, 0.5, PhasePoint::of(0, 0)), SupportError);
}

} // TEST_SUITE
