#include "phasequant/operators.hpp"

#include "phasequant/errors.hpp"
#include "phasequant/parallel.hpp"
#include "phasequant/transform.hpp"

#include <algorithm>
#include <cmath>

namespace phq {

namespace {

constexpr std::size_t kChunks = 16;

void check_symbol_point(const Symbol& F, const PhasePoint& X) {
    if (F.n() != X.n()) throw InvalidArgument("symbol and phase point have different n");
}

// Sum of per-node matrices, reduced in a fixed order over a fixed number of chunks.
template <class Accumulate>
Eigen::MatrixXcd chunked_sum(std::size_t count, Eigen::Index dim, Accumulate&& add) {
    std::vector<Eigen::MatrixXcd> part(kChunks, Eigen::MatrixXcd::Zero(dim, dim));
    parallel_for(kChunks, [&](std::size_t c) {
        for (std::size_t i = count * c / kChunks; i < count * (c + 1) / kChunks; ++i) add(i, part[c]);
    });
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& p : part) M += p;
    return M;
}

// Nodes of one mode pair (x_j, xi_j) with log weights.
struct ModeNodes {
    std::vector<double> z, zeta, logw;
};

ModeNodes mode_nodes(int m, double scale) {
    const AxisRule& r = hermite_axis(m);
    ModeNodes out;
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < m; ++a) {
            out.z.push_back(scale * r.nodes[a]);
            out.zeta.push_back(scale * r.nodes[b]);
            out.logw.push_back(2.0 * std::log(scale) + std::log(r.weights[a]) + std::log(r.weights[b]));
        }
    return out;
}

cplx checked(cplx v, const PhasePoint& Z) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw IntegrationFailure("non-finite symbol value at node " + Z.str(), Z.to_vector());
    return v;
}

// Coefficients below this fraction of the largest one are skipped.
constexpr double kPrune = 1e-18;

struct NodeCoefficients {
    ModeNodes nodes;
    std::size_t P = 0;     // nodes per mode
    std::vector<cplx> coef; // P for n = 1, P * P for n = 2 (first mode major)
    double cut = 0.0;
};

// c_i = w_i F(Z_i) e^{gauss_comp |Z_i|^2}. The Gaussian factor and the weight are
// combined in log space; either alone over- or underflows on large rules.
NodeCoefficients node_coefficients(const Symbol& F, int n, int m, double scale, double gauss_comp) {
    NodeCoefficients out;
    out.nodes = mode_nodes(m, scale);
    const ModeNodes& nodes = out.nodes;
    const std::size_t P = out.P = nodes.logw.size();
    auto point = [&](std::size_t a, std::size_t b) {
        if (n == 1) return PhasePoint::of(nodes.z[a], nodes.zeta[a]);
        return PhasePoint::of(nodes.z[a], nodes.z[b], nodes.zeta[a], nodes.zeta[b]);
    };
    const std::size_t total = n == 1 ? P : P * P;
    out.coef.resize(total);
    parallel_for(total, [&](std::size_t i) {
        const std::size_t a = n == 1 ? i : i / P, b = n == 1 ? 0 : i % P;
        const PhasePoint Z = point(a, b);
        const double logw = nodes.logw[a] + (n == 1 ? 0.0 : nodes.logw[b]);
        const double g = std::exp(logw + gauss_comp * Z.sq_norm());
        out.coef[i] = g == 0.0 ? cplx(0.0) : checked(F(Z), Z) * g;
    });
    double cmax = 0.0;
    for (const cplx& c : out.coef) {
        if (!std::isfinite(std::abs(c))) throw IntegrationFailure("quantization weight overflow", {});
        cmax = std::max(cmax, std::abs(c));
    }
    out.cut = kPrune * cmax;
    return out;
}

// sum_i c_i B(Z_i) with B built per mode.
template <class ModeMatrix>
Eigen::MatrixXcd quantize_sum(const Symbol& F, const FockBasis& basis, int m, double scale, double gauss_comp,
                              ModeMatrix&& mode_matrix) {
    const int n = basis.n;
    const NodeCoefficients nc = node_coefficients(F, n, m, scale, gauss_comp);
    const ModeNodes& nodes = nc.nodes;
    const std::vector<cplx>& coef = nc.coef;
    const std::size_t P = nc.P, total = coef.size();
    const double cut = nc.cut;
    if (n == 1) {
        return chunked_sum(P, basis.dim(), [&](std::size_t a, Eigen::MatrixXcd& acc) {
            if (std::abs(coef[a]) <= cut) return;
            acc += coef[a] * mode_matrix(nodes.z[a], nodes.zeta[a]);
        });
    }
    std::vector<char> need(P, 0);
    for (std::size_t i = 0; i < total; ++i)
        if (std::abs(coef[i]) > cut) need[i / P] = need[i % P] = 1;
    std::vector<Eigen::MatrixXcd> second(P);
    parallel_for(P, [&](std::size_t b) {
        if (need[b]) second[b] = mode_matrix(nodes.z[b], nodes.zeta[b]);
    });
    const int N = basis.cutoff;
    return chunked_sum(P, basis.dim(), [&](std::size_t a, Eigen::MatrixXcd& acc) {
        Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
        bool any = false;
        for (std::size_t b = 0; b < P; ++b) {
            const cplx c = coef[a * P + b];
            if (std::abs(c) <= cut) continue;
            T += c * second[b];
            any = true;
        }
        if (any) acc += kron(mode_matrix(nodes.z[a], nodes.zeta[a]), T);
    });
}

} // namespace

const char* provenance_name(Provenance p) {
    switch (p) {
    case Provenance::weyl_symbol: return "weyl-symbol";
    case Provenance::aw_symbol: return "aw-symbol";
    case Provenance::fock_matrix: return "fock-matrix";
    }
    return "?";
}

std::vector<cplx> BracketProvider::symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const {
    std::vector<cplx> out(Z.size());
    parallel_for(out.size(), [&](std::size_t i) {
        const PhasePoint z = Z.node(i);
        out[i] = bracket(X + z, X - z);
    });
    return out;
}

// <Sigma_W Psi_X, Psi_Y> = e^{-|W-c|^2} e^{-(i/2) sigma(X,Y)} e^{i sigma(X-Y, W)}, c = (X+Y)/2
cplx weyl_bracket(const Symbol& F, const PhasePoint& X, const PhasePoint& Y, const QuadratureSettings& q) {
    check_symbol_point(F, X);
    check_same_dimension(X, Y);
    const int n = X.n();
    const cplx S = sigma_transform_at([&](const PhasePoint& W) { return F(W); }, 0.5 * (X + Y), 1.0, q.resolved(n), 1.0,
                                      X - Y);
    return std::pow(kPi, -n) * std::exp(cplx(0.0, -0.5 * symplectic(X, Y))) * S;
}

// (2 pi)^{-n} G(W) e^{-|W-c|^2/2} e^{-|X-Y|^2/8} e^{(i/2) sigma(X-Y, W)}
cplx aw_bracket(const Symbol& G, const PhasePoint& X, const PhasePoint& Y, const QuadratureSettings& q) {
    check_symbol_point(G, X);
    check_same_dimension(X, Y);
    const int n = X.n();
    const PhasePoint D = X - Y;
    const cplx S = sigma_transform_at([&](const PhasePoint& W) { return G(W); }, 0.5 * (X + Y), std::sqrt(2.0),
                                      q.resolved(n), 0.5, D);
    return std::pow(2.0 * kPi, -n) * std::exp(-D.sq_norm() / 8.0) * S;
}

cplx WeylSymbolOperator::bracket(const PhasePoint& X, const PhasePoint& Y) const { return weyl_bracket(F_, X, Y, q_); }

std::vector<cplx> WeylSymbolOperator::symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const {
    check_symbol_point(F_, X);
    const int n = X.n();
    std::vector<cplx> S = sigma_transform([&](const PhasePoint& W) { return F_(W); }, X, 1.0, q_.resolved(n), 2.0, Z);
    const double c = std::pow(kPi, -n);
    for (std::size_t i = 0; i < S.size(); ++i) S[i] *= c * std::exp(cplx(0.0, -symplectic(Z.node(i), X)));
    return S;
}

cplx AWSymbolOperator::bracket(const PhasePoint& X, const PhasePoint& Y) const { return aw_bracket(G_, X, Y, q_); }

std::vector<cplx> AWSymbolOperator::symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const {
    check_symbol_point(G_, X);
    const int n = X.n();
    std::vector<cplx> S =
        sigma_transform([&](const PhasePoint& W) { return G_(W); }, X, std::sqrt(2.0), q_.resolved(n), 1.0, Z);
    const double c = std::pow(2.0 * kPi, -n);
    for (std::size_t i = 0; i < S.size(); ++i) S[i] *= c * std::exp(-0.5 * Z.node(i).sq_norm());
    return S;
}

MatrixOperator::MatrixOperator(FockMatrix M) : M_(std::move(M)) {
    if (M_.data.rows() != M_.basis.dim() || M_.data.cols() != M_.basis.dim())
        throw InvalidArgument("matrix shape does not match Fock basis dimension");
    if (!M_.data.allFinite()) throw InvalidArgument("matrix has non-finite entries");
}

cplx MatrixOperator::bracket(const PhasePoint& X, const PhasePoint& Y) const { return matrix_bracket(*this, X, Y); }

// Columns of amplitudes for X + Z and X - Z in blocks; one product per block.
std::vector<cplx> MatrixOperator::symmetric_brackets(const PhasePoint& X, const TensorRule& Z) const {
    if (X.n() != M_.basis.n) throw InvalidArgument("symmetric_brackets: basis mismatch");
    constexpr std::size_t kBlock = 256;
    const std::size_t P = Z.size();
    const Eigen::Index D = M_.basis.dim();
    std::vector<cplx> out(P);
    const std::size_t blocks = (P + kBlock - 1) / kBlock;
    parallel_for(blocks, [&](std::size_t b) {
        const std::size_t lo = b * kBlock, hi = std::min(P, lo + kBlock);
        const Eigen::Index cols = static_cast<Eigen::Index>(hi - lo);
        Eigen::MatrixXcd plus(D, cols), minus(D, cols);
        for (std::size_t i = lo; i < hi; ++i) {
            const PhasePoint z = Z.node(i);
            plus.col(i - lo) = coherent_amplitudes(X + z, M_.basis).coeffs;
            minus.col(i - lo) = coherent_amplitudes(X - z, M_.basis).coeffs;
        }
        const Eigen::MatrixXcd Mp = M_.data * plus;
        for (Eigen::Index c = 0; c < cols; ++c) out[lo + c] = minus.col(c).dot(Mp.col(c));
    });
    return out;
}

bool MatrixOperator::in_trust_region(const PhasePoint& X) const {
    return X.norm() <= 0.5 * std::sqrt(static_cast<double>(M_.basis.cutoff));
}

cplx matrix_bracket(const MatrixOperator& M, const PhasePoint& X, const PhasePoint& Y) {
    if (X.n() != M.basis().n || Y.n() != M.basis().n) throw InvalidArgument("matrix_bracket: basis mismatch");
    return contract(M.matrix().data, coherent_amplitudes(Y, M.basis()), coherent_amplitudes(X, M.basis()));
}

// pi^{-n} sum_i w_i F(Z_i) e^{|Z_i|^2} Sigma_{Z_i}
MatrixOperator quantize_weyl(const Symbol& F, const FockBasis& basis, const QuadratureSettings& q) {
    if (F.n() != basis.n) throw InvalidArgument("symbol and basis have different n");
    const int N = basis.cutoff;
    const FockBasis mode(1, N);
    Eigen::MatrixXcd M = quantize_sum(F, basis, q.for_matrix(basis.n, N), 1.0, 1.0, [&](double z, double zeta) {
        return reflection_exact(PhasePoint::of(z, zeta), mode).data;
    });
    return MatrixOperator({basis, std::pow(kPi, -basis.n) * M});
}

// (2 pi)^{-n} sum_i w_i G(Z_i) e^{|Z_i|^2/2} c_Z c_Z^dagger
MatrixOperator quantize_aw(const Symbol& G, const FockBasis& basis, const QuadratureSettings& q) {
    if (G.n() != basis.n) throw InvalidArgument("symbol and basis have different n");
    const int N = basis.cutoff;
    const FockBasis mode(1, N);
    if (basis.n == 1) {
        // Rank-one terms batched: M = sum over blocks of A diag(c) A^dagger.
        const NodeCoefficients nc = node_coefficients(G, 1, q.for_matrix(1, N), std::sqrt(2.0), 0.5);
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < nc.coef.size(); ++i)
            if (std::abs(nc.coef[i]) > nc.cut) kept.push_back(i);
        constexpr std::size_t kBlock = 256;
        const std::size_t blocks = (kept.size() + kBlock - 1) / kBlock;
        Eigen::MatrixXcd M = chunked_sum(blocks, N, [&](std::size_t blk, Eigen::MatrixXcd& acc) {
            const std::size_t lo = blk * kBlock, hi = std::min(kept.size(), lo + kBlock);
            Eigen::MatrixXcd A(N, static_cast<Eigen::Index>(hi - lo)), Ac(N, static_cast<Eigen::Index>(hi - lo));
            for (std::size_t t = lo; t < hi; ++t) {
                const std::size_t i = kept[t];
                const Eigen::Index col = static_cast<Eigen::Index>(t - lo);
                A.col(col) = coherent_amplitudes(PhasePoint::of(nc.nodes.z[i], nc.nodes.zeta[i]), mode).coeffs;
                Ac.col(col) = nc.coef[i] * A.col(col);
            }
            acc.noalias() += Ac * A.adjoint();
        });
        return MatrixOperator({basis, std::pow(2.0 * kPi, -1.0) * M});
    }
    Eigen::MatrixXcd M = quantize_sum(G, basis, q.for_matrix(basis.n, N), std::sqrt(2.0), 0.5, [&](double z, double zeta) {
        const Eigen::VectorXcd c = coherent_amplitudes(PhasePoint::of(z, zeta), mode).coeffs;
        return Eigen::MatrixXcd(c * c.adjoint());
    });
    return MatrixOperator({basis, std::pow(2.0 * kPi, -basis.n) * M});
}

cplx bisymbol_ratio(const BracketProvider& P, const PhasePoint& X, const PhasePoint& Y) {
    return P.bracket(X, Y) / overlap_closed_form(X, Y);
}

} // namespace phq
