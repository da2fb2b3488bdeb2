#include "phasequant/commutators.hpp"
#include "phasequant/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace phq;

namespace {

MatrixOperator projector(const FockBasis& b) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
    P(0, 0) = 1.0;
    return MatrixOperator({b, P});
}

} // namespace

TEST_SUITE("commutators") {

TEST_CASE("exp(Phi_S) on coherent vectors") {
    const FockBasis b(1, 64);
    const PhasePoint O = PhasePoint::of(0, 0);
    const ExpPhiAction a0 = exp_phi_action(O, PhasePoint::of(0.4, -0.3), b);
    CHECK(std::abs(a0.scalar - 1.0) < 1e-15);
    CHECK(a0.error < 1e-12);

    const ExpPhiAction a1 = exp_phi_action(PhasePoint::of(1, 0), O, b);
    CHECK(std::abs(a1.scalar - std::exp(0.5)) < 1e-14);
    CHECK(a1.error < 1e-8);

    const ExpPhiAction a2 = exp_phi_action(PhasePoint::of(0, 1), PhasePoint::of(1, 0), b);
    CHECK(std::abs(a2.scalar - std::exp(0.5) * std::exp(cplx(0, -0.5))) < 1e-14);
    CHECK(a2.error < 1e-8);
    CHECK(a2.trusted);
    CHECK_FALSE(exp_phi_trusted(PhasePoint::of(4, 4), PhasePoint::of(4, 4), b));
}

TEST_CASE("two-path error shrinks when the cutoff doubles") {
    const PhasePoint p = PhasePoint::of(1.8, 2.4);
    const double e64 = exp_phi_action(p, p, FockBasis(1, 64)).error;
    const double e128 = exp_phi_action(p, p, FockBasis(1, 128)).error;
    CHECK(e128 < 0.5 * e64);
}

TEST_CASE("conjugation bracket examples") {
    const FockBasis b(1, 64);
    const PhasePoint O = PhasePoint::of(0, 0);
    CHECK(std::abs(conjugation_bracket(projector(b), PhasePoint::of(1, 0), O) - std::exp(0.5)) < 1e-8);
    const MatrixOperator I(identity_matrix(b));
    for (const auto& X : random_points(1, 4, 1.0, 70)) CHECK(std::abs(conjugation_bracket(I, PhasePoint::of(0.3, 0.6), X) - 1.0) < 1e-8);
}

TEST_CASE("conjugation identity against the bisymbol ratio") {
    const FockBasis b(1, 64);
    const MatrixOperator A = quantize_aw(parse_symbol_fn("gauss(1/4)", 1), b);
    const auto Xs = random_points(1, 6, 1.0, 71), Zs = random_points(1, 6, 1.0, 72);
    for (std::size_t i = 0; i < Xs.size(); ++i)
        CHECK(std::abs(bisymbol_ratio(A, Xs[i] + Zs[i], Xs[i] - Zs[i]) - conjugation_bracket(A, Zs[i], Xs[i])) < 1e-6);
}

TEST_CASE("composition law") {
    const FockBasis b(1, 64);
    for (const auto& Z : random_points(1, 4, 1.0, 73)) CHECK(composition_error(Z, PhasePoint::of(-0.5, 0.2), b) < 1e-8);
}

TEST_CASE("commutator series") {
    const FockBasis b(1, 32);
    const CommutatorSeries s = ch_series(MatrixOperator(identity_matrix(b)), PhasePoint::of(0.5, 0.5), 4);
    REQUIRE(s.terms.size() == 5);
    for (int m = 1; m <= 4; ++m) CHECK(s.terms[m].cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(ch_partial_bracket(s, 4, PhasePoint::of(0.2, 0.1)) - 1.0) < 1e-10);

    const FockBasis b64(1, 64);
    const MatrixOperator A = quantize_weyl(parse_symbol_fn("gauss(1/2)", 1), b64);
    const PhasePoint Z = PhasePoint::of(0.12, 0.16), X = PhasePoint::of(0, 0);
    const CommutatorSeries t = ch_series(A, Z, 8);
    const cplx ref = conjugation_bracket(A, Z, X);
    CHECK(std::abs(ch_partial_bracket(t, 8, X) - ref) < 1e-8);
    CHECK(std::abs(ch_partial_bracket(t, 2, X) - ref) > std::abs(ch_partial_bracket(t, 8, X) - ref));
}

TEST_CASE("anti-Wick symbol through conjugated brackets") {
    const FockBasis b(1, 64);
    const AwChResult r = aw_ch_symbol(MatrixOperator(identity_matrix(b)), PhasePoint::of(0.3, -0.2));
    CHECK(r.verdict == Verdict::converged);
    CHECK(std::abs(r.value - 1.0) < 1e-4);
    const AwChResult p = aw_ch_symbol(projector(b), PhasePoint::of(0.3, -0.2));
    CHECK(p.verdict != Verdict::converged);
}

TEST_CASE("commutator norms and the Beals integral") {
    const FockBasis b(1, 64);
    const MatrixOperator W(displacement_exact(PhasePoint::of(1, 0), b));
    const auto c = beals_commutators(W, 3);
    REQUIRE(c.count(MultiIndex{1}));
    CHECK(std::abs(c.at(MultiIndex{0}).norm - 1.0) < 1e-8);
    CHECK(std::abs(c.at(MultiIndex{1}).norm - 1.0) < 1e-6);
    CHECK(multi_index_str(MultiIndex{2}) == "(2)");

    const PhaseGrid one = PhaseGrid::parse("0:0:1,0:0:1", 1);
    const BealsReport ri = beals_check(MatrixOperator(identity_matrix(b)), one);
    CHECK(ri.all_converged());
    CHECK(std::abs(ri.lhs_sup - kPi) / kPi < 1e-4);
    CHECK(beals_check(projector(b), one).all_converged());
}

} // TEST_SUITE
