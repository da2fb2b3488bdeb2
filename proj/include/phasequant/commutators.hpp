#pragma once

#include "phasequant/operators.hpp"
#include "phasequant/quadrature.hpp"

#include <map>
#include <vector>

namespace phq {

// Bound on |X| + |Z| for the truncated exponentials of Phi_S.
double exp_phi_radius(const FockBasis& basis);
bool exp_phi_trusted(const PhasePoint& Z, const PhasePoint& X, const FockBasis& basis);

struct ExpPhiAction {
    cplx scalar;               // e^{|Z|^2/2 + Z.X - (i/2) sigma(Z, X)}
    Eigen::VectorXcd state;    // e^{Phi_S(Z)} c(X) in the truncated basis
    Eigen::VectorXcd expected; // scalar * c(X + Z)
    double error = 0.0;        // |state - expected| / |scalar|
    bool trusted = true;
};

ExpPhiAction exp_phi_action(const PhasePoint& Z, const PhasePoint& X, const FockBasis& basis);

// <e^{-Phi_S(Z)} A e^{Phi_S(Z)} Psi_X, Psi_X> with truncated exponentials.
cplx conjugation_bracket(const MatrixOperator& A, const PhasePoint& Z, const PhasePoint& X, bool* trusted = nullptr);

// e^{Phi_S(Z)} e^{Phi_S(X)} c(0) against e^{-(i/2) sigma(Z,X)} e^{Phi_S(Z+X)} c(0), relative.
double composition_error(const PhasePoint& Z, const PhasePoint& X, const FockBasis& basis);

// Terms (-1)^m/m! (ad Phi_S(Z))^m A for m = 0..max_order.
struct CommutatorSeries {
    FockMatrix base;
    PhasePoint Z;
    std::vector<Eigen::MatrixXcd> terms;
};

CommutatorSeries ch_series(const MatrixOperator& A, const PhasePoint& Z, int max_order);
// c(X)^dagger (terms 0..m) c(X)
cplx ch_partial_bracket(const CommutatorSeries& s, int m, const PhasePoint& X);

struct AwChOptions {
    int box_nodes = 0; // 0: 40 for n = 1, 20 for n = 2
    std::vector<double> radii{3.0, 4.0, 5.0};
    ScanPolicy policy{0.01, 1e-2};
};

struct AwChResult {
    cplx value;
    Verdict verdict = Verdict::inconclusive;
    std::vector<ScanEntry> scan, abs_scan;
    bool trusted = true;
};

// (2 pi)^{-n} int conjugation_bracket(A, Z, X) e^{-|Z|^2/2} dZ over growing boxes.
AwChResult aw_ch_symbol(const MatrixOperator& A, const PhasePoint& X, const AwChOptions& opts = {});

// Multi-index alpha = (alpha_1, ..., alpha_n); (ad a(V))^alpha applies ad a(V_n) first.
using MultiIndex = std::vector<int>;

struct CommutatorEntry {
    FockMatrix matrix;
    double norm = 0.0; // spectral norm of the low block
};

std::map<MultiIndex, CommutatorEntry> beals_commutators(const MatrixOperator& A, int max_order);

struct BealsOptions {
    int box_nodes = 0; // 0: 40 for n = 1, 20 for n = 2
    std::vector<double> radii{3.0, 4.0, 5.0, 6.0};
    ScanPolicy policy{0.01, 1e-2};
    int max_order = -1; // -1: 2n + 1
};

struct BealsReport {
    PhaseGrid grid;
    std::vector<double> lhs;
    std::vector<std::vector<ScanEntry>> scans;
    std::vector<Verdict> verdicts;
    std::map<MultiIndex, double> norms;
    double rhs_sum = 0.0;
    double lhs_sup = 0.0;
    double ratio = 0.0; // lhs_sup / rhs_sum
    bool all_converged() const;
};

// int |<A Psi_{X+Z}, Psi_{X-Z}>| dZ at every grid point against the sum of commutator norms.
BealsReport beals_check(const MatrixOperator& A, const PhaseGrid& grid, const BealsOptions& opts = {});

std::string multi_index_str(const MultiIndex& a);

} // namespace phq
