#include "phasequant/fock.hpp"

#include "phasequant/errors.hpp"
#include "phasequant/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace phq {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_basis(const FockBasis& basis, const PhasePoint& X) {
    if (X.n() != basis.n) throw InvalidArgument("phase point and Fock basis have different n");
}

// Eigen-decomposition of the truncated single-mode position matrix:
// U = V diag(t) V^T with t the cutoff-point Gauss-Hermite nodes.
struct PositionEigen {
    Eigen::VectorXd t;
    Eigen::MatrixXd V;
};

std::shared_ptr<const PositionEigen> position_eigen(int N) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const PositionEigen>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[N];
    if (slot) return slot;
    const AxisRule& rule = hermite_axis(N);
    auto e = std::make_shared<PositionEigen>();
    e->t.resize(N);
    e->V.resize(N, N);
    for (int l = 0; l < N; ++l) {
        const double t = rule.nodes[l];
        e->t[l] = t;
        // orthonormal polynomials for e^{-t^2} times sqrt(w)
        double pm = 0.0;
        double p = std::sqrt(rule.weights[l]) * std::pow(kPi, -0.25);
        for (int k = 0; k < N; ++k) {
            e->V(k, l) = p;
            const double next = std::sqrt(2.0 / (k + 1)) * t * p - std::sqrt(static_cast<double>(k) / (k + 1)) * pm;
            pm = p;
            p = next;
        }
    }
    slot = e;
    return slot;
}

// exp(s (cos(th) U + sin(th) P)) for one mode, P = -iD.
// With R = diag(e^{i k th}), R U R^dagger = cos(th) U + sin(th) P.
Eigen::MatrixXcd mode_exponential(int N, cplx s, double theta) {
    auto e = position_eigen(N);
    Eigen::MatrixXcd left(N, N);
    for (int l = 0; l < N; ++l) {
        const cplx d = std::exp(s * e->t[l]);
        for (int k = 0; k < N; ++k) left(k, l) = e->V(k, l) * d;
    }
    Eigen::MatrixXcd M = left * e->V.transpose().cast<cplx>();
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) M(j, k) *= std::exp(kI * (theta * (j - k)));
    return M;
}

// exp(s (a U + b P)) for real a, b.
Eigen::MatrixXcd mode_exponential_ab(int N, cplx s, double a, double b) {
    const double r = std::hypot(a, b);
    if (r == 0.0) return Eigen::MatrixXcd::Identity(N, N);
    return mode_exponential(N, s * r, std::atan2(b, a));
}

// T <- exp(s (a U + b P)) T, column by column, without forming the matrix.
void mode_exponential_apply(int N, cplx s, double a, double b, Eigen::MatrixXcd& T) {
    const double r = std::hypot(a, b);
    if (r == 0.0) return;
    const double theta = std::atan2(b, a);
    auto e = position_eigen(N);
    Eigen::VectorXcd phase(N);
    for (int k = 0; k < N; ++k) phase[k] = std::exp(kI * (theta * k));
    T = phase.conjugate().asDiagonal() * T;
    Eigen::MatrixXcd Y = e->V.transpose().cast<cplx>() * T;
    for (int l = 0; l < N; ++l) Y.row(l) *= std::exp(s * r * e->t[l]);
    T = phase.asDiagonal() * (e->V.cast<cplx>() * Y);
}

Eigen::MatrixXcd mode_position(int N) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(N, N);
    for (int k = 0; k + 1 < N; ++k) U(k, k + 1) = U(k + 1, k) = std::sqrt((k + 1) / 2.0);
    return U;
}

Eigen::MatrixXcd mode_derivative(int N) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(N, N);
    for (int k = 0; k + 1 < N; ++k) {
        D(k, k + 1) = std::sqrt((k + 1) / 2.0);
        D(k + 1, k) = -std::sqrt((k + 1) / 2.0);
    }
    return D;
}

// Place a single-mode matrix on `mode` of the tensor space.
Eigen::MatrixXcd on_mode(const FockBasis& basis, int mode, const Eigen::MatrixXcd& A) {
    if (mode < 0 || mode >= basis.n) throw InvalidArgument("mode index out of range");
    if (basis.n == 1) return A;
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(basis.cutoff, basis.cutoff);
    return mode == 0 ? kron(A, I) : kron(I, A);
}

// Both modes, mode 0 outer.
Eigen::MatrixXcd per_mode(const FockBasis& basis, const Eigen::MatrixXcd& A0, const Eigen::MatrixXcd& A1) {
    return basis.n == 1 ? A0 : kron(A0, A1);
}

// d[j][k] for j >= k: real part of <j|D(gamma)|k> with the phase e^{i(j-k)arg gamma} removed.
Eigen::MatrixXd displacement_magnitudes(int N, double r) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(N, N);
    if (r == 0.0) {
        d.setIdentity();
        return d;
    }
    // sqrt(k (k+a)) and 1/sqrt((k+1)(k+1+a)) do not depend on r.
    thread_local int table_n = -1;
    thread_local std::vector<double> s_lo, s_hi_inv;
    if (table_n != N) {
        s_lo.assign(static_cast<std::size_t>(N) * N, 0.0);
        s_hi_inv.assign(static_cast<std::size_t>(N) * N, 0.0);
        for (int a = 0; a < N; ++a)
            for (int k = 0; k + a < N; ++k) {
                s_lo[a * N + k] = std::sqrt(static_cast<double>(k) * (k + a));
                s_hi_inv[a * N + k] = 1.0 / std::sqrt((k + 1.0) * (k + 1.0 + a));
            }
        table_n = N;
    }
    const double x = r * r;
    const double logr = std::log(r);
    for (int a = 0; a < N; ++a) {
        // q_k = sqrt(k!/(k+a)!) L_k^{(a)}(x) scaled by r^a e^{-x/2}
        const double* lo = &s_lo[a * N];
        const double* hi = &s_hi_inv[a * N];
        double qm = 0.0;
        double q = std::exp(a * logr - 0.5 * x - 0.5 * std::lgamma(a + 1.0));
        for (int k = 0; k + a < N; ++k) {
            d(k + a, k) = q;
            const double next = ((2.0 * k + 1.0 + a - x) * q - lo[k] * qm) * hi[k];
            qm = q;
            q = next;
        }
    }
    return d;
}

// <j|D(gamma)|k>, D(gamma) = exp(gamma a^dagger - conj(gamma) a) with a the standard lowering operator.
Eigen::MatrixXcd mode_displacement_exact(int N, cplx gamma) {
    const double r = std::abs(gamma);
    const double phi = std::arg(gamma);
    const Eigen::MatrixXd d = displacement_magnitudes(N, r);
    // e^{i phi (j - k)} from tabulated powers; real arithmetic avoids the
    // checked complex multiply.
    std::vector<double> ec(N), es(N);
    for (int j = 0; j < N; ++j) {
        ec[j] = std::cos(phi * j);
        es[j] = std::sin(phi * j);
    }
    Eigen::MatrixXcd M(N, N);
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            const double re = ec[j] * ec[k] + es[j] * es[k];
            const double im = es[j] * ec[k] - ec[j] * es[k];
            const double m = j >= k ? d(j, k) : ((k - j) % 2 ? -d(k, j) : d(k, j));
            M(j, k) = cplx(re * m, im * m);
        }
    }
    return M;
}

cplx mode_alpha(const PhasePoint& X, int j) { return cplx(X.x(j), X.xi(j)) / std::sqrt(2.0); }

} // namespace

FockBasis::FockBasis(int n, int cutoff) : n(n), cutoff(cutoff) {
    if (n != 1 && n != 2) throw InvalidArgument("Fock basis mode count must be 1 or 2");
    if (cutoff < 2) throw InvalidArgument("Fock cutoff must be >= 2");
}

std::array<int, 2> FockBasis::multi_index(int index) const {
    if (n == 1) return {index, 0};
    return {index / cutoff, index % cutoff};
}

bool FockBasis::in_low_block(int index) const {
    auto k = multi_index(index);
    return k[0] <= low_cutoff() && k[1] <= low_cutoff();
}

Eigen::MatrixXd hermite_values(std::span<const double> u, int N) {
    if (N < 1) throw InvalidArgument("hermite_values needs N >= 1");
    Eigen::MatrixXd H(static_cast<Eigen::Index>(u.size()), N);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = u[i];
        double hm = 0.0;
        double h = std::pow(kPi, -0.25) * std::exp(-0.5 * t * t);
        for (int k = 0; k < N; ++k) {
            H(static_cast<Eigen::Index>(i), k) = h;
            const double next = std::sqrt(2.0 / (k + 1)) * t * h - std::sqrt(static_cast<double>(k) / (k + 1)) * hm;
            hm = h;
            h = next;
        }
    }
    return H;
}

CoherentAmplitudes coherent_amplitudes(const PhasePoint& X, const FockBasis& basis) {
    check_basis(basis, X);
    const int N = basis.cutoff;
    std::array<Eigen::VectorXcd, 2> mode;
    for (int j = 0; j < basis.n; ++j) {
        const cplx z = mode_alpha(X, j);
        mode[j].resize(N);
        cplx c = std::exp(-0.5 * std::norm(z));
        for (int k = 0; k < N; ++k) {
            mode[j][k] = c;
            c *= z / std::sqrt(k + 1.0);
        }
    }
    CoherentAmplitudes out{X, basis, {}};
    if (basis.n == 1) {
        out.coeffs = mode[0];
    } else {
        out.coeffs.resize(basis.dim());
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) out.coeffs[basis.index(a, b)] = mode[0][a] * mode[1][b];
    }
    return out;
}

cplx overlap_closed_form(const PhasePoint& X, const PhasePoint& Z) {
    return std::exp(cplx(-0.25 * (X - Z).sq_norm(), 0.5 * symplectic(X, Z)));
}

cplx coherent_state(const PhasePoint& X, std::span<const double> u) {
    if (u.size() != static_cast<std::size_t>(X.n())) throw InvalidArgument("coherent_state: wrong argument length");
    double re = 0.0, im = 0.0;
    for (int j = 0; j < X.n(); ++j) {
        const double d = u[j] - X.x(j);
        re -= 0.5 * d * d;
        im += u[j] * X.xi(j) - 0.5 * X.x(j) * X.xi(j);
    }
    return std::pow(kPi, -0.25 * X.n()) * std::exp(cplx(re, im));
}

FockMatrix position_matrix(const FockBasis& basis, int mode) {
    return {basis, on_mode(basis, mode, mode_position(basis.cutoff))};
}

FockMatrix derivative_matrix(const FockBasis& basis, int mode) {
    return {basis, on_mode(basis, mode, mode_derivative(basis.cutoff))};
}

FockMatrix annihilation_matrix(int mode, const FockBasis& basis) {
    return {basis, on_mode(basis, mode, mode_position(basis.cutoff) + mode_derivative(basis.cutoff))};
}

FockMatrix parity_matrix(const FockBasis& basis) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
    for (int i = 0; i < basis.dim(); ++i) {
        auto k = basis.multi_index(i);
        P(i, i) = ((k[0] + k[1]) % 2) ? -1.0 : 1.0;
    }
    return {basis, P};
}

FockMatrix identity_matrix(const FockBasis& basis) {
    return {basis, Eigen::MatrixXcd::Identity(basis.dim(), basis.dim())};
}

FockMatrix phi_s_matrix(const PhasePoint& Z, const FockBasis& basis) {
    check_basis(basis, Z);
    const int N = basis.cutoff;
    const Eigen::MatrixXcd U = mode_position(N);
    const Eigen::MatrixXcd P = -kI * mode_derivative(N);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
    for (int j = 0; j < basis.n; ++j) M += on_mode(basis, j, Z.x(j) * U + Z.xi(j) * P);
    return {basis, M};
}

FockMatrix exp_phi_s(cplx s, const PhasePoint& Z, const FockBasis& basis) {
    check_basis(basis, Z);
    const int N = basis.cutoff;
    Eigen::MatrixXcd E0 = mode_exponential_ab(N, s, Z.x(0), Z.xi(0));
    if (basis.n == 1) return {basis, E0};
    return {basis, per_mode(basis, E0, mode_exponential_ab(N, s, Z.x(1), Z.xi(1)))};
}

Eigen::VectorXcd apply_exp_phi_s(cplx s, const PhasePoint& Z, const FockBasis& basis, const Eigen::VectorXcd& v) {
    check_basis(basis, Z);
    if (v.size() != basis.dim()) throw InvalidArgument("apply_exp_phi_s: vector length does not match basis");
    const int N = basis.cutoff;
    if (basis.n == 1) {
        Eigen::MatrixXcd T = v;
        mode_exponential_apply(N, s, Z.x(0), Z.xi(0), T);
        return T.col(0);
    }
    // Column-major view: T(k2, k1) = v[k1 * N + k2]; mode 1 acts on columns, mode 0 on rows.
    Eigen::MatrixXcd T = Eigen::Map<const Eigen::MatrixXcd>(v.data(), N, N);
    mode_exponential_apply(N, s, Z.x(1), Z.xi(1), T);
    Eigen::MatrixXcd Tt = T.transpose();
    mode_exponential_apply(N, s, Z.x(0), Z.xi(0), Tt);
    T = Tt.transpose();
    return Eigen::Map<const Eigen::VectorXcd>(T.data(), basis.dim());
}

// i xi U - x D = i (xi U - x P)
FockMatrix weyl_translation_matrix(const PhasePoint& X, const FockBasis& basis) {
    check_basis(basis, X);
    const int N = basis.cutoff;
    Eigen::MatrixXcd E0 = mode_exponential_ab(N, kI, X.xi(0), -X.x(0));
    if (basis.n == 1) return {basis, E0};
    return {basis, per_mode(basis, E0, mode_exponential_ab(N, kI, X.xi(1), -X.x(1)))};
}

FockMatrix reflection_matrix(const PhasePoint& Z, const FockBasis& basis) {
    const FockMatrix W = weyl_translation_matrix(Z, basis);
    const FockMatrix P = parity_matrix(basis);
    return {basis, W.data * P.data * W.data.adjoint()};
}

cplx reflection_bracket(const PhasePoint& Z, const PhasePoint& X, const PhasePoint& Y) {
    check_same_dimension(Z, X);
    check_same_dimension(Z, Y);
    return std::exp(cplx(0.0, symplectic(X, Z))) * overlap_closed_form(2.0 * Z - X, Y);
}

FockMatrix displacement_exact(const PhasePoint& X, const FockBasis& basis) {
    check_basis(basis, X);
    const int N = basis.cutoff;
    Eigen::MatrixXcd E0 = mode_displacement_exact(N, mode_alpha(X, 0));
    if (basis.n == 1) return {basis, E0};
    return {basis, per_mode(basis, E0, mode_displacement_exact(N, mode_alpha(X, 1)))};
}

// Sigma_Z = W_{2Z} P exactly.
FockMatrix reflection_exact(const PhasePoint& Z, const FockBasis& basis) {
    FockMatrix D = displacement_exact(2.0 * Z, basis);
    for (int k = 0; k < basis.dim(); ++k) {
        auto m = basis.multi_index(k);
        if ((m[0] + m[1]) % 2) D.data.col(k) *= -1.0;
    }
    return D;
}

cplx contract(const Eigen::MatrixXcd& M, const CoherentAmplitudes& cY, const CoherentAmplitudes& cX) {
    if (M.rows() != cY.coeffs.size() || M.cols() != cX.coeffs.size())
        throw InvalidArgument("contract: dimension mismatch");
    return cY.coeffs.dot(M * cX.coeffs);
}

double trust_radius(const FockBasis& basis) { return std::sqrt(basis.cutoff / 2.0); }

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

Eigen::MatrixXcd low_block(const FockMatrix& M) {
    std::vector<int> idx;
    for (int i = 0; i < M.basis.dim(); ++i)
        if (M.basis.in_low_block(i)) idx.push_back(i);
    Eigen::MatrixXcd B(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b) B(a, b) = M.data(idx[a], idx[b]);
    return B;
}

double low_block_norm(const FockMatrix& M) {
    const Eigen::MatrixXcd B = low_block(M);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

} // namespace phq
