#include "oracles.hpp"

#include "phasequant/fock.hpp"
#include "phasequant/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace phq;

namespace {

double max_abs(const Eigen::MatrixXcd& M) { return M.cwiseAbs().maxCoeff(); }

Eigen::MatrixXcd block(const Eigen::MatrixXcd& M, int k) { return M.topLeftCorner(k + 1, k + 1); }

} // namespace

TEST_SUITE("fock") {

TEST_CASE("Hermite function values") {
    const double u0 = 0.0;
    const Eigen::MatrixXd h = hermite_values(std::span<const double>(&u0, 1), 3);
    CHECK(h(0, 0) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-15));
    CHECK(std::abs(h(0, 1)) < 1e-16);
    // int h_2^2 on the oracle's 80-point rule
    const auto r = oracle::hermite_line(80);
    const Eigen::MatrixXd H = hermite_values(r.t, 3);
    double s = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) s += r.w[i] * H(i, 2) * H(i, 2);
    CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("Hermite values match the GSL oracle and stay finite to N = 256") {
    std::vector<double> u;
    for (int i = 0; i <= 40; ++i) u.push_back(-10.0 + 0.5 * i);
    const Eigen::MatrixXd H = hermite_values(u, 256);
    CHECK(H.allFinite());
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto ref = oracle::hermite_functions(u[i], 64);
        for (int k = 0; k < 64; ++k) e = std::max(e, std::abs(H(i, k) - ref[k]));
    }
    CHECK(e < 1e-12);
}

TEST_CASE("coherent amplitudes") {
    const FockBasis b(1, 16);
    const auto c0 = coherent_amplitudes(PhasePoint::of(0, 0), b).coeffs;
    CHECK(std::abs(c0[0] - 1.0) < 1e-15);
    CHECK(c0.tail(15).cwiseAbs().maxCoeff() < 1e-15);

    const auto c2 = coherent_amplitudes(PhasePoint::of(2, 0), b).coeffs;
    CHECK(std::abs(c2[0] - std::exp(-1.0)) < 1e-15);

    const auto c11 = coherent_amplitudes(PhasePoint::of(1, 1), b).coeffs;
    for (int k = 0; k < 16; ++k) CHECK(std::abs(c11[k] - oracle::coherent_amplitude(1, 1, k)) < 1e-10);
}

TEST_CASE("n = 2 amplitudes factor over modes") {
    const PhasePoint X = PhasePoint::of(0.4, -0.3, 0.9, 0.2);
    const FockBasis b2(2, 8), b1(1, 8);
    const auto c = coherent_amplitudes(X, b2).coeffs;
    const auto c1 = coherent_amplitudes(PhasePoint::of(0.4, 0.9), b1).coeffs;
    const auto c2 = coherent_amplitudes(PhasePoint::of(-0.3, 0.2), b1).coeffs;
    double e = 0.0;
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) e = std::max(e, std::abs(c[b2.index(j, k)] - c1[j] * c2[k]));
    CHECK(e < 1e-15);
}

TEST_CASE("overlap closed form examples") {
    const PhasePoint X = PhasePoint::of(0.3, 1.1);
    CHECK(std::abs(overlap_closed_form(X, X) - 1.0) < 1e-15);
    CHECK(std::abs(overlap_closed_form(PhasePoint::of(2, 0), PhasePoint::of(0, 0)) - std::exp(-1.0)) < 1e-15);
    const cplx want = std::exp(-0.5) * std::exp(cplx(0, -0.5));
    CHECK(std::abs(overlap_closed_form(PhasePoint::of(1, 0), PhasePoint::of(0, 1)) - want) < 1e-15);
}

TEST_CASE("overlap closed form against oracle quadrature") {
    for (int n : {1, 2}) {
        const auto P = random_points(n, 20, 3.0, 11);
        const auto Q = random_points(n, 20, 3.0, 12);
        for (std::size_t i = 0; i < P.size(); ++i)
            CHECK(std::abs(overlap_closed_form(P[i], Q[i]) - oracle::overlap(P[i].to_vector(), Q[i].to_vector())) < 1e-10);
    }
}

TEST_CASE("overlap consistency of truncated amplitudes at N = 64") {
    const FockBasis b(1, 64);
    const auto P = random_points(1, 30, 2.0, 13);
    const auto Q = random_points(1, 30, 2.0, 14);
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto cx = coherent_amplitudes(P[i], b).coeffs, cy = coherent_amplitudes(Q[i], b).coeffs;
        CHECK(std::abs(cy.dot(cx) - overlap_closed_form(P[i], Q[i])) < 1e-8);
    }
}

TEST_CASE("position and derivative matrices") {
    const FockBasis b(1, 12);
    const auto U = position_matrix(b).data;
    const auto D = derivative_matrix(b).data;
    CHECK(std::abs(U(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(max_abs(U - U.adjoint()) == 0.0);
    CHECK(U.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(D(0, 1) + D(1, 0)) < 1e-15);
    for (int j = 0; j < 12; ++j)
        for (int k = 0; k < 12; ++k) {
            CAPTURE(j);
            CAPTURE(k);
            CHECK(std::abs(U(j, k) - oracle::position_element(j, k)) < 1e-12);
            CHECK(std::abs(D(j, k) - oracle::derivative_element(j, k)) < 1e-12);
        }
}

TEST_CASE("Phi_S matrix") {
    const FockBasis b(1, 2);
    CHECK(max_abs(phi_s_matrix(PhasePoint::of(0, 0), b).data) == 0.0);
    CHECK(std::abs(phi_s_matrix(PhasePoint::of(1, 0), b).data(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    const FockBasis b16(1, 16);
    for (const auto& Z : random_points(1, 10, 2.0, 15)) {
        const auto P = phi_s_matrix(Z, b16).data;
        CHECK(max_abs(P - P.adjoint()) < 1e-14);
        CHECK(max_abs(P + phi_s_matrix(-Z, b16).data) == 0.0);
    }
}

TEST_CASE("annihilation matrix a(V) = x + d/du") {
    const FockBasis b(1, 10);
    const auto A = annihilation_matrix(0, b).data;
    CHECK(A.col(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(A(0, 1) - std::sqrt(2.0)) < 1e-14);
    for (int j = 0; j < 10; ++j)
        for (int k = 0; k < 10; ++k)
            if (j != k - 1) CHECK(std::abs(A(j, k)) < 1e-15);
}

TEST_CASE("Weyl translation matrix") {
    const FockBasis b(1, 64);
    CHECK(max_abs(weyl_translation_matrix(PhasePoint::of(0, 0), b).data - Eigen::MatrixXcd::Identity(64, 64)) < 1e-15);
    for (const auto& X : random_points(1, 6, 2.0, 16)) {
        const auto W = weyl_translation_matrix(X, b).data;
        CHECK((W.col(0) - coherent_amplitudes(X, b).coeffs).cwiseAbs().maxCoeff() < 1e-8);
        for (int k = 0; k <= 16; ++k) {
            const double nk = W.col(k).norm();
            CHECK(nk <= 1.0 + 1e-12);
            CHECK(nk >= 1.0 - 1e-6);
        }
    }
}

TEST_CASE("exact displacement matches the translation oracle") {
    const FockBasis b(1, 12);
    for (const auto& X : random_points(1, 3, 2.0, 17)) {
        const auto W = displacement_exact(X, b).data;
        for (int j = 0; j < 12; ++j)
            for (int k = 0; k < 12; ++k) CHECK(std::abs(W(j, k) - oracle::translation_element(X[0], X[1], j, k)) < 1e-10);
    }
}

TEST_CASE("ladder commutator [a(V), W_X] = (x + i xi) W_X on the low block") {
    const FockBasis b(1, 64);
    const auto A = annihilation_matrix(0, b).data;
    for (const auto& X : random_points(1, 5, 2.0, 18)) {
        const auto W = weyl_translation_matrix(X, b).data;
        const Eigen::MatrixXcd C = A * W - W * A - cplx(X[0], X[1]) * W;
        CHECK(max_abs(block(C, 16)) < 1e-6);
    }
}

TEST_CASE("reflection brackets") {
    const PhasePoint O = PhasePoint::of(0, 0);
    CHECK(std::abs(reflection_bracket(O, O, O) - 1.0) < 1e-15);
    for (const auto& X : random_points(1, 5, 2.0, 19)) {
        const PhasePoint Z = PhasePoint::of(0.3, -0.4);
        const cplx want = std::exp(cplx(-Z.sq_norm(), 2.0 * symplectic(X, Z)));
        CHECK(std::abs(reflection_bracket(Z, X, -X) - want) < 1e-14);
    }
    const PhasePoint X = PhasePoint::of(1, 0);
    CHECK(std::abs(reflection_bracket(X, X, X) - 1.0) < 1e-15);
}

TEST_CASE("reflection matrix") {
    const FockBasis b(1, 64);
    const auto P = reflection_matrix(PhasePoint::of(0, 0), b).data;
    for (int k = 0; k < 64; ++k) CHECK(std::abs(P(k, k) - (k % 2 ? -1.0 : 1.0)) < 1e-15);
    for (const auto& Z : random_points(1, 4, 1.0, 20)) {
        const auto S = reflection_matrix(Z, b).data;
        CHECK(max_abs(block(S * S, 16) - Eigen::MatrixXcd::Identity(17, 17)) < 1e-6);
        const PhasePoint X = PhasePoint::of(0.2, 0.5), Y = PhasePoint::of(-0.4, 0.1);
        const cplx c = contract(S, coherent_amplitudes(Y, b), coherent_amplitudes(X, b));
        CHECK(std::abs(c - reflection_bracket(Z, X, Y)) < 1e-8);
        CHECK(max_abs(block(S - reflection_exact(Z, b).data, 16)) < 1e-8);
    }
}

TEST_CASE("exp(s Phi_S) applied to a vector matches the matrix") {
    for (int n : {1, 2}) {
        const FockBasis b(n, n == 1 ? 32 : 8);
        const PhasePoint Z = n == 1 ? PhasePoint::of(0.7, -0.2) : PhasePoint::of(0.3, 0.1, -0.2, 0.4);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(b.dim());
        for (int k = 0; k < b.dim(); ++k) v[k] = cplx(std::cos(k), std::sin(0.5 * k)) / (1.0 + k);
        for (cplx s : {cplx(1.0), cplx(-1.0), cplx(0.0, 0.5)}) {
            const Eigen::VectorXcd a = exp_phi_s(s, Z, b).data * v;
            const Eigen::VectorXcd c = apply_exp_phi_s(s, Z, b, v);
            CHECK((a - c).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()));
        }
    }
}

} // TEST_SUITE
