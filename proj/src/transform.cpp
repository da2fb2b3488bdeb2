#include "phasequant/transform.hpp"

#include "phasequant/errors.hpp"
#include "phasequant/simd.hpp"

#include <cmath>

namespace phq {

TensorRule point_rule(const PhasePoint& Z) {
    std::vector<AxisRule> axes;
    for (int a = 0; a < Z.dim(); ++a) axes.push_back(AxisRule{{Z[a]}, {1.0}});
    return TensorRule(Z.n(), std::move(axes));
}

TensorRule grid_rule(const PhaseGrid& grid) {
    std::vector<AxisRule> axes;
    for (const auto& g : grid.axes()) {
        AxisRule r;
        for (int i = 0; i < g.count; ++i) {
            r.nodes.push_back(g.value(i));
            r.weights.push_back(1.0);
        }
        axes.push_back(std::move(r));
    }
    return TensorRule(grid.n(), std::move(axes));
}

std::vector<cplx> contract_axis(const std::vector<cplx>& in, const std::vector<std::size_t>& dims, int axis,
                                const std::vector<cplx>& K, std::size_t rows) {
    std::size_t inner = 1, outer = 1;
    for (int a = 0; a < axis; ++a) inner *= dims[a];
    for (std::size_t a = axis + 1; a < dims.size(); ++a) outer *= dims[a];
    const std::size_t cols = dims[axis];
    if (K.size() != rows * cols) throw InvalidArgument("contract_axis: kernel shape mismatch");
    const auto& k = simd::kernels();
    std::vector<cplx> out(inner * rows * outer);
    for (std::size_t b = 0; b < outer; ++b) {
        const cplx* src = in.data() + b * inner * cols;
        cplx* dst = out.data() + b * inner * rows;
        if (inner == 1) {
            for (std::size_t o = 0; o < rows; ++o) dst[o] = k.dotu(cols, K.data() + o * cols, src);
        } else {
            for (std::size_t o = 0; o < rows; ++o)
                for (std::size_t i = 0; i < cols; ++i) k.axpy(inner, K[o * cols + i], src + i * inner, dst + o * inner);
        }
    }
    return out;
}

namespace {

// Outer axis whose coordinate multiplies W axis a in sigma(Z, W) = w.zeta - z.omega.
int paired_axis(int a, int n) { return a < n ? a + n : a - n; }
double paired_sign(int a, int n) { return a < n ? 1.0 : -1.0; }

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

GaussHermiteRule sigma_inner_rule(const PhasePoint& center, double scale, int base_nodes, double coef,
                                  const TensorRule& outer) {
    const int n = center.n();
    if (outer.n() != n) throw InvalidArgument("sigma_transform: dimension mismatch");
    std::vector<int> m(2 * n);
    for (int a = 0; a < 2 * n; ++a) {
        const double omega = scale * std::abs(coef) * max_abs(outer.axis(paired_axis(a, n)).nodes);
        m[a] = hermite_nodes_for_frequency(base_nodes, omega);
    }
    return GaussHermiteRule(n, m, center, scale);
}

std::vector<cplx> sigma_transform(const Integrand& g, const PhasePoint& center, double scale, int base_nodes, double coef,
                                  const TensorRule& outer) {
    const GaussHermiteRule inner = sigma_inner_rule(center, scale, base_nodes, coef, outer);
    return sigma_transform_values(inner, sample_nodes(g, inner), coef, outer);
}

std::vector<cplx> sigma_transform_values(const TensorRule& inner, std::vector<cplx> T, double coef, const TensorRule& outer) {
    const int n = inner.n();
    if (outer.n() != n) throw InvalidArgument("sigma_transform: dimension mismatch");
    if (T.size() != inner.size()) throw InvalidArgument("sigma_transform: value count mismatch");
    const std::vector<double> w = inner.weights();
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (!std::isfinite(T[i].real()) || !std::isfinite(T[i].imag()))
            throw IntegrationFailure("non-finite integrand value at node " + inner.node(i).str(), inner.node(i).to_vector());
        T[i] *= w[i];
    }
    std::vector<std::size_t> dims(2 * n);
    for (int a = 0; a < 2 * n; ++a) dims[a] = inner.axis(a).size();
    for (int a = 0; a < 2 * n; ++a) {
        const AxisRule& zin = outer.axis(paired_axis(a, n));
        const AxisRule& win = inner.axis(a);
        const double f = coef * paired_sign(a, n);
        std::vector<cplx> K(zin.size() * win.size());
        for (std::size_t o = 0; o < zin.size(); ++o)
            for (std::size_t i = 0; i < win.size(); ++i)
                K[o * win.size() + i] = std::polar(1.0, f * zin.nodes[o] * win.nodes[i]);
        T = contract_axis(T, dims, a, K, zin.size());
        dims[a] = zin.size();
    }
    // T is indexed by outer axis paired_axis(a) at position a; reorder to outer enumeration.
    std::vector<std::size_t> ostride(2 * n);
    std::size_t s = 1;
    for (int b = 0; b < 2 * n; ++b) {
        ostride[b] = s;
        s *= outer.axis(b).size();
    }
    std::vector<cplx> out(outer.size());
    for (std::size_t t = 0; t < T.size(); ++t) {
        std::size_t rem = t, idx = 0;
        for (int a = 0; a < 2 * n; ++a) {
            idx += (rem % dims[a]) * ostride[paired_axis(a, n)];
            rem /= dims[a];
        }
        out[idx] = T[t];
    }
    return out;
}

cplx sigma_transform_at(const Integrand& g, const PhasePoint& center, double scale, int base_nodes, double coef,
                        const PhasePoint& Z) {
    return sigma_transform(g, center, scale, base_nodes, coef, point_rule(Z))[0];
}

} // namespace phq
