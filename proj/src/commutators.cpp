#include "phasequant/commutators.hpp"

#include "phasequant/errors.hpp"
#include "phasequant/parallel.hpp"
#include "phasequant/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace phq {

namespace {

constexpr double kExpPhiRoundingLimit = 6.0;

int default_box(int nodes, int n) { return nodes > 0 ? nodes : (n == 1 ? 40 : 20); }

void check_operator_point(const MatrixOperator& A, const PhasePoint& X) {
    if (A.n() != X.n()) throw InvalidArgument("operator and point have different n");
}

// e^{-Phi} is Hermitian, so <e^{-Phi} A e^{Phi} c, c> = (e^{-Phi} c)^dagger A (e^{Phi} c).
cplx conjugated(const Eigen::MatrixXcd& A, const FockBasis& basis, const PhasePoint& Z, const Eigen::VectorXcd& c) {
    const Eigen::VectorXcd plus = apply_exp_phi_s(1.0, Z, basis, c);
    const Eigen::VectorXcd minus = apply_exp_phi_s(-1.0, Z, basis, c);
    return minus.dot(A * plus);
}

void enumerate(int n, int max_order, MultiIndex& cur, int pos, std::vector<MultiIndex>& out) {
    if (pos == n) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int j = 0; j < pos; ++j) used += cur[j];
    for (int k = 0; used + k <= max_order; ++k) {
        cur[pos] = k;
        enumerate(n, max_order, cur, pos + 1, out);
    }
}

} // namespace

// Truncation limits |X| + |Z| to about sqrt(N/2). Independently of N, cancellation in
// the spectral exponential costs eps e^{(|X|+|Z|)^2/2} relative to the result.
double exp_phi_radius(const FockBasis& basis) { return std::min(trust_radius(basis), kExpPhiRoundingLimit); }

bool exp_phi_trusted(const PhasePoint& Z, const PhasePoint& X, const FockBasis& basis) {
    return Z.norm() + X.norm() <= exp_phi_radius(basis);
}

ExpPhiAction exp_phi_action(const PhasePoint& Z, const PhasePoint& X, const FockBasis& basis) {
    check_same_dimension(Z, X);
    if (Z.n() != basis.n) throw InvalidArgument("phase point and Fock basis have different n");
    ExpPhiAction r;
    r.scalar = std::exp(cplx(0.5 * Z.sq_norm() + dot(Z, X), -0.5 * symplectic(Z, X)));
    r.state = apply_exp_phi_s(1.0, Z, basis, coherent_amplitudes(X, basis).coeffs);
    r.expected = r.scalar * coherent_amplitudes(X + Z, basis).coeffs;
    r.error = (r.state - r.expected).norm() / std::abs(r.scalar);
    r.trusted = exp_phi_trusted(Z, X, basis);
    return r;
}

cplx conjugation_bracket(const MatrixOperator& A, const PhasePoint& Z, const PhasePoint& X, bool* trusted) {
    check_operator_point(A, X);
    check_same_dimension(Z, X);
    if (trusted) *trusted = exp_phi_trusted(Z, X, A.basis());
    return conjugated(A.matrix().data, A.basis(), Z, coherent_amplitudes(X, A.basis()).coeffs);
}

double composition_error(const PhasePoint& Z, const PhasePoint& X, const FockBasis& basis) {
    check_same_dimension(Z, X);
    if (Z.n() != basis.n) throw InvalidArgument("phase point and Fock basis have different n");
    const Eigen::VectorXcd c0 = coherent_amplitudes(PhasePoint(basis.n), basis).coeffs;
    const Eigen::VectorXcd lhs = apply_exp_phi_s(1.0, Z, basis, apply_exp_phi_s(1.0, X, basis, c0));
    const Eigen::VectorXcd rhs =
        std::exp(cplx(0.0, -0.5 * symplectic(Z, X))) * apply_exp_phi_s(1.0, Z + X, basis, c0);
    return (lhs - rhs).norm() / rhs.norm();
}

CommutatorSeries ch_series(const MatrixOperator& A, const PhasePoint& Z, int max_order) {
    if (max_order < 0) throw InvalidArgument("series order must be nonnegative");
    if (Z.n() != A.n()) throw InvalidArgument("operator and point have different n");
    const Eigen::MatrixXcd Phi = phi_s_matrix(Z, A.basis()).data;
    CommutatorSeries s{A.matrix(), Z, {}};
    s.terms.push_back(A.matrix().data);
    for (int m = 1; m <= max_order; ++m) {
        const Eigen::MatrixXcd& prev = s.terms.back();
        Eigen::MatrixXcd next = (Phi * prev - prev * Phi) * (-1.0 / m);
        if (!next.allFinite()) throw IntegrationFailure("commutator series term " + std::to_string(m) + " is not finite", Z.to_vector());
        s.terms.push_back(std::move(next));
    }
    return s;
}

cplx ch_partial_bracket(const CommutatorSeries& s, int m, const PhasePoint& X) {
    if (m < 0 || m >= static_cast<int>(s.terms.size())) throw InvalidArgument("partial sum order out of range");
    if (X.n() != s.base.basis.n) throw InvalidArgument("series and point have different n");
    const Eigen::VectorXcd c = coherent_amplitudes(X, s.base.basis).coeffs;
    cplx v = 0.0;
    for (int k = 0; k <= m; ++k) v += c.dot(s.terms[k] * c);
    return v;
}

AwChResult aw_ch_symbol(const MatrixOperator& A, const PhasePoint& X, const AwChOptions& opts) {
    check_operator_point(A, X);
    if (opts.radii.empty()) throw InvalidArgument("aw_ch_symbol needs at least one radius");
    const int n = X.n();
    const FockBasis& basis = A.basis();
    const Eigen::VectorXcd c = coherent_amplitudes(X, basis).coeffs;
    const double norm = std::pow(2.0 * kPi, -n);
    AwChResult r;
    for (double R : opts.radii) {
        const BoxRule box(n, default_box(opts.box_nodes, n), R);
        std::vector<cplx> f(box.size());
        parallel_for(box.size(), [&](std::size_t i) {
            const PhasePoint Z = box.node(i);
            f[i] = conjugated(A.matrix().data, basis, Z, c) * std::exp(-0.5 * Z.sq_norm());
        });
        // Box corners reach sqrt(2n) R. Only truncation is flagged: the e^{-|Z|^2/2} weight
        // absorbs the cancellation that limits the bare action.
        if (std::sqrt(2.0 * n) * R + X.norm() > trust_radius(basis)) r.trusted = false;
        r.scan.push_back({R, norm * weighted_sum(box, f)});
        r.abs_scan.push_back({R, norm * weighted_abs_sum(box, f)});
    }
    r.value = r.scan.back().value;
    r.verdict = aw_scan_verdict(r.scan, r.abs_scan, opts.policy);
    return r;
}

std::map<MultiIndex, CommutatorEntry> beals_commutators(const MatrixOperator& A, int max_order) {
    if (max_order < 0) throw InvalidArgument("commutator order must be nonnegative");
    const FockBasis& basis = A.basis();
    const int n = basis.n;
    std::vector<Eigen::MatrixXcd> a;
    for (int j = 0; j < n; ++j) a.push_back(annihilation_matrix(j, basis).data);
    std::vector<MultiIndex> alphas;
    MultiIndex cur(n, 0);
    enumerate(n, max_order, cur, 0, alphas);
    std::map<MultiIndex, CommutatorEntry> out;
    for (const MultiIndex& alpha : alphas) {
        Eigen::MatrixXcd M = A.matrix().data;
        for (int j = n - 1; j >= 0; --j)
            for (int k = 0; k < alpha[j]; ++k) M = a[j] * M - M * a[j];
        CommutatorEntry e{{basis, std::move(M)}, 0.0};
        e.norm = low_block_norm(e.matrix);
        out.emplace(alpha, std::move(e));
    }
    return out;
}

bool BealsReport::all_converged() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::converged; });
}

BealsReport beals_check(const MatrixOperator& A, const PhaseGrid& grid, const BealsOptions& opts) {
    if (A.n() != grid.n()) throw InvalidArgument("operator and grid have different n");
    if (opts.radii.empty()) throw InvalidArgument("beals_check needs at least one radius");
    const int n = grid.n();
    const int order = opts.max_order >= 0 ? opts.max_order : 2 * n + 1;
    BealsReport r;
    r.grid = grid;
    for (const auto& [alpha, e] : beals_commutators(A, order)) {
        r.norms[alpha] = e.norm;
        r.rhs_sum += e.norm;
    }
    r.lhs.resize(grid.size());
    r.scans.resize(grid.size());
    r.verdicts.resize(grid.size());
    const int mb = default_box(opts.box_nodes, n);
    parallel_for(grid.size(), [&](std::size_t i) {
        const PhasePoint X = grid.point(i);
        for (double R : opts.radii) {
            const BoxRule box(n, mb, R);
            r.scans[i].push_back({R, weighted_abs_sum(box, A.symmetric_brackets(X, box))});
        }
        r.lhs[i] = r.scans[i].back().value.real();
        r.verdicts[i] = classify_scan(r.scans[i], opts.policy);
    });
    r.lhs_sup = *std::max_element(r.lhs.begin(), r.lhs.end());
    r.ratio = r.rhs_sum > 0.0 ? r.lhs_sup / r.rhs_sum : std::numeric_limits<double>::infinity();
    return r;
}

std::string multi_index_str(const MultiIndex& a) {
    std::string s = "(";
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(a[j]);
    }
    return s + ")";
}

} // namespace phq
