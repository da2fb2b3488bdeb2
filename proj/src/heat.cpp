#include "phasequant/heat.hpp"

#include "phasequant/errors.hpp"
#include "phasequant/parallel.hpp"
#include "phasequant/transform.hpp"

#include <cmath>

namespace phq {

namespace {

int nodes_for(const HeatOptions& o, int n) { return o.nodes > 0 ? o.nodes : (n == 1 ? 40 : 20); }

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
}

void check_n(const Symbol& F, const PhasePoint& X) {
    if (F.n() != X.n()) throw InvalidArgument("symbol and point have different n");
}

// Multilinear interpolation; zero outside the grid box.
cplx interpolate(const SymbolGrid& F, const PhasePoint& Y) {
    const auto& axes = F.grid.axes();
    const int d = static_cast<int>(axes.size());
    std::vector<std::size_t> base(d);
    std::vector<double> frac(d);
    std::vector<std::size_t> stride(d);
    std::size_t s = 1;
    for (int a = 0; a < d; ++a) {
        stride[a] = s;
        s *= static_cast<std::size_t>(axes[a].count);
        const double h = (axes[a].hi - axes[a].lo) / (axes[a].count - 1);
        const double t = (Y[a] - axes[a].lo) / h;
        if (t < 0.0 || t > axes[a].count - 1) return 0.0;
        std::size_t i = static_cast<std::size_t>(std::floor(t));
        if (i >= static_cast<std::size_t>(axes[a].count - 1)) i = axes[a].count - 2;
        base[a] = i;
        frac[a] = t - static_cast<double>(i);
    }
    cplx v = 0.0;
    for (int corner = 0; corner < (1 << d); ++corner) {
        double w = 1.0;
        std::size_t idx = 0;
        for (int a = 0; a < d; ++a) {
            const bool up = (corner >> a) & 1;
            w *= up ? frac[a] : 1.0 - frac[a];
            idx += (base[a] + (up ? 1 : 0)) * stride[a];
        }
        if (w != 0.0) v += w * F.values[idx];
    }
    return v;
}

} // namespace

cplx heat_apply(const Symbol& F, double lambda, const PhasePoint& X, const HeatOptions& opts) {
    check_lambda(lambda);
    check_n(F, X);
    const int n = X.n();
    GaussHermiteRule rule(n, nodes_for(opts, n), X, std::sqrt(2.0 * lambda));
    return std::pow(2.0 * kPi * lambda, -n) * integrate_gh([&](const PhasePoint& Y) { return F(Y); }, rule);
}

cplx heat_apply(const SymbolGrid& F, double lambda, const PhasePoint& X, const HeatOptions& opts) {
    check_lambda(lambda);
    if (F.grid.n() != X.n()) throw InvalidArgument("grid and point have different n");
    const int n = X.n();
    double inside = 1.0;
    for (int a = 0; a < 2 * n; ++a) {
        const auto& ax = F.grid.axes()[a];
        if (ax.count < 2) throw SupportError("grid axis " + std::to_string(a) + " has a single point");
        const double s = std::sqrt(2.0 * lambda);
        inside *= 0.5 * (std::erf((ax.hi - X[a]) / s) - std::erf((ax.lo - X[a]) / s));
    }
    if (1.0 - inside > 1e-8)
        throw SupportError("grid does not cover the heat kernel around " + X.str() + " (outside mass " +
                           std::to_string(1.0 - inside) + ")");
    for (std::size_t i = 0; i < F.values.size(); ++i)
        if (!std::isfinite(F.values[i].real()) || !std::isfinite(F.values[i].imag()))
            throw IntegrationFailure("grid value is not finite", F.grid.point(i).to_vector());
    GaussHermiteRule rule(n, nodes_for(opts, n), X, std::sqrt(2.0 * lambda));
    return std::pow(2.0 * kPi * lambda, -n) * integrate_gh([&](const PhasePoint& Y) { return interpolate(F, Y); }, rule);
}

// Weight e^{-|Y|^2/(2l)} on the rule; the kernel at X contributes
// e^{(2 X.Y - |X|^2)/(2l)}.
std::vector<cplx> heat_apply_many(const Symbol& F, double lambda, const std::vector<PhasePoint>& Xs,
                                  const HeatOptions& opts) {
    check_lambda(lambda);
    if (Xs.empty()) return {};
    const int n = F.n();
    for (const auto& X : Xs) check_n(F, X);
    GaussHermiteRule rule(n, nodes_for(opts, n), PhasePoint(n), std::sqrt(2.0 * lambda));
    const std::size_t P = rule.size();
    std::vector<double> w = rule.weights();
    std::vector<std::vector<double>> factor(Xs.size(), std::vector<double>(P));
    std::vector<char> used(P, 0);
    for (std::size_t k = 0; k < Xs.size(); ++k)
        for (std::size_t i = 0; i < P; ++i) {
            const PhasePoint Y = rule.node(i);
            factor[k][i] = w[i] * std::exp((2.0 * dot(Xs[k], Y) - Xs[k].sq_norm()) / (2.0 * lambda));
            if (factor[k][i] > opts.prune) used[i] = 1;
        }
    std::vector<cplx> values(P, 0.0);
    parallel_for(P, [&](std::size_t i) {
        if (used[i]) values[i] = F(rule.node(i));
    });
    std::vector<cplx> out(Xs.size());
    for (std::size_t k = 0; k < Xs.size(); ++k) {
        for (std::size_t i = 0; i < P; ++i)
            if (used[i] && !(std::isfinite(values[i].real()) && std::isfinite(values[i].imag())))
                throw IntegrationFailure("non-finite symbol value at node " + rule.node(i).str(), rule.node(i).to_vector());
        cplx s = 0.0;
        for (std::size_t i = 0; i < P; ++i)
            if (used[i]) s += factor[k][i] * values[i];
        out[k] = std::pow(2.0 * kPi * lambda, -n) * s;
    }
    return out;
}

// Expanding the exponent: -|W|^2/(2l) + |Z|^2/(2l) + (i/l) sigma(Z, W).
cplx s_apply(const Symbol& F, double lambda, const PhasePoint& Z, const HeatOptions& opts) {
    check_lambda(lambda);
    check_n(F, Z);
    const int n = Z.n();
    const cplx S = sigma_transform_at([&](const PhasePoint& W) { return F(W); }, PhasePoint(n), std::sqrt(2.0 * lambda),
                                      nodes_for(opts, n), 1.0 / lambda, Z);
    return std::pow(2.0 * kPi * lambda, -n) * std::exp(Z.sq_norm() / (2.0 * lambda)) * S;
}

// z.xi - x.zeta = -sigma(Z, Y)
cplx symplectic_fourier(const Symbol& F, double lambda, const PhasePoint& Z, const HeatOptions& opts) {
    check_lambda(lambda);
    check_n(F, Z);
    const int n = Z.n();
    const double s2 = opts.fourier_scale * opts.fourier_scale;
    const cplx S = sigma_transform_at([&](const PhasePoint& Y) { return F(Y) * std::exp(Y.sq_norm() / s2); },
                                      PhasePoint(n), opts.fourier_scale, nodes_for(opts, n), -1.0 / lambda, Z);
    return std::pow(2.0 * kPi * lambda, -n) * S;
}

std::vector<cplx> symplectic_fourier_twice(const Symbol& F, double lambda, const std::vector<PhasePoint>& Zs,
                                           const HeatOptions& opts) {
    check_lambda(lambda);
    if (Zs.empty()) return {};
    const int n = F.n();
    const double s = opts.fourier_scale;
    const double c = std::pow(2.0 * kPi * lambda, -n);
    const int m = nodes_for(opts, n);
    // The intermediate rule has to resolve the outer frequencies for every point.
    double zmax = 0.0;
    for (const auto& Z : Zs) {
        check_n(F, Z);
        for (int a = 0; a < Z.dim(); ++a) zmax = std::max(zmax, std::abs(Z[a]));
    }
    const GaussHermiteRule mid(n, hermite_nodes_for_frequency(m, s * zmax / lambda), PhasePoint(n), s);
    std::vector<cplx> TF = sigma_transform([&](const PhasePoint& Y) { return F(Y) * std::exp(Y.sq_norm() / (s * s)); },
                                           PhasePoint(n), s, m, -1.0 / lambda, mid);
    for (std::size_t i = 0; i < TF.size(); ++i) TF[i] *= c * std::exp(mid.node(i).sq_norm() / (s * s));
    std::vector<cplx> out(Zs.size());
    for (std::size_t k = 0; k < Zs.size(); ++k) out[k] = c * sigma_transform_values(mid, TF, -1.0 / lambda, point_rule(Zs[k]))[0];
    return out;
}

cplx multiplier_mlambda(const Symbol& F, double lambda, const PhasePoint& X) {
    check_lambda(lambda);
    check_n(F, X);
    return std::exp(-X.sq_norm() / (2.0 * lambda)) * F(X);
}

} // namespace phq
