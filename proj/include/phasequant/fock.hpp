#pragma once

#include "phasequant/phase_space.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>

namespace phq {

// Hermite basis h_k of L^2(R^n) truncated at k_j < cutoff in every mode.
// Multi-indices are ordered row-major: index = k_1 * cutoff + k_2.
struct FockBasis {
    FockBasis() = default;
    FockBasis(int n, int cutoff);

    int n = 1;
    int cutoff = 2;

    int dim() const { return n == 1 ? cutoff : cutoff * cutoff; }
    std::array<int, 2> multi_index(int index) const;
    int index(int k1, int k2 = 0) const { return n == 1 ? k1 : k1 * cutoff + k2; }
    // Largest per-mode index of the low block.
    int low_cutoff() const { return cutoff / 4; }
    bool in_low_block(int index) const;
    bool operator==(const FockBasis& o) const { return n == o.n && cutoff == o.cutoff; }
};

// Entry (j, k) is <A h_k, h_j>.
struct FockMatrix {
    FockBasis basis;
    Eigen::MatrixXcd data;
};

struct CoherentAmplitudes {
    PhasePoint X;
    FockBasis basis;
    Eigen::VectorXcd coeffs; // coeffs[k] = <Psi_X, h_k>
};

// h_k(u_i) for k < N, rows indexed by i.
Eigen::MatrixXd hermite_values(std::span<const double> u, int N);

CoherentAmplitudes coherent_amplitudes(const PhasePoint& X, const FockBasis& basis);

// <Psi_X, Psi_Z> = exp(-|X-Z|^2/4 + (i/2) sigma(X, Z))
cplx overlap_closed_form(const PhasePoint& X, const PhasePoint& Z);

// Psi_X(u) evaluated directly; u has n entries.
cplx coherent_state(const PhasePoint& X, std::span<const double> u);

FockMatrix position_matrix(const FockBasis& basis, int mode = 0);
FockMatrix derivative_matrix(const FockBasis& basis, int mode = 0);
FockMatrix annihilation_matrix(int mode, const FockBasis& basis);
FockMatrix parity_matrix(const FockBasis& basis);
FockMatrix identity_matrix(const FockBasis& basis);

// z.U + zeta.(1/i)D
FockMatrix phi_s_matrix(const PhasePoint& Z, const FockBasis& basis);

// exp(s Phi_S(Z)) for complex s, through the Gauss-Hermite eigenbasis of the
// truncated position matrix.
FockMatrix exp_phi_s(cplx s, const PhasePoint& Z, const FockBasis& basis);
// exp(s Phi_S(Z)) v with the same spectral construction, O(N^2) per mode.
Eigen::VectorXcd apply_exp_phi_s(cplx s, const PhasePoint& Z, const FockBasis& basis, const Eigen::VectorXcd& v);

// exp(i xi.U - x.D)
FockMatrix weyl_translation_matrix(const PhasePoint& X, const FockBasis& basis);

// W_Z P W_Z^dagger with P the parity matrix.
FockMatrix reflection_matrix(const PhasePoint& Z, const FockBasis& basis);

// <Sigma_Z Psi_X, Psi_Y> = e^{i sigma(X,Z)} <Psi_{2Z-X}, Psi_Y>
cplx reflection_bracket(const PhasePoint& Z, const PhasePoint& X, const PhasePoint& Y);

// Matrix elements of the untruncated W_X and Sigma_Z, from Laguerre polynomials.
FockMatrix displacement_exact(const PhasePoint& X, const FockBasis& basis);
FockMatrix reflection_exact(const PhasePoint& Z, const FockBasis& basis);

// c_Y^dagger M c_X = <M Psi_X, Psi_Y> in the truncated space.
cplx contract(const Eigen::MatrixXcd& M, const CoherentAmplitudes& cY, const CoherentAmplitudes& cX);

// Radius within which truncated exponentials of U, D acting on coherent
// vectors agree with the untruncated operators to near rounding.
double trust_radius(const FockBasis& basis);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// Spectral norm of the low block (indices k_j <= N/4).
double low_block_norm(const FockMatrix& M);
Eigen::MatrixXcd low_block(const FockMatrix& M);

} // namespace phq
