#include "phasequant/quadrature.hpp"

#include "phasequant/errors.hpp"
#include "phasequant/parallel.hpp"
#include "phasequant/simd.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace phq {

namespace {

AxisRule gsl_rule(const gsl_integration_fixed_type* type, int m, double a, double b) {
    if (m < 1) throw InvalidArgument("quadrature node count must be >= 1");
    gsl_integration_fixed_workspace* ws = gsl_integration_fixed_alloc(type, static_cast<std::size_t>(m), a, b, 0.0, 0.0);
    if (!ws) throw Error("failed to build quadrature rule with " + std::to_string(m) + " nodes");
    const double* x = gsl_integration_fixed_nodes(ws);
    const double* w = gsl_integration_fixed_weights(ws);
    AxisRule r;
    r.nodes.assign(x, x + m);
    r.weights.assign(w, w + m);
    gsl_integration_fixed_free(ws);
    return r;
}

} // namespace

const AxisRule& hermite_axis(int m) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<AxisRule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[m];
    if (!slot) {
        // weight e^{-b (x - a)^2} with a = 0, b = 1
        slot = std::make_unique<AxisRule>(gsl_rule(gsl_integration_fixed_hermite, m, 0.0, 1.0));
    }
    return *slot;
}

AxisRule legendre_axis(int m, double lo, double hi) {
    if (!(lo < hi)) throw InvalidArgument("legendre rule needs lo < hi");
    return gsl_rule(gsl_integration_fixed_legendre, m, lo, hi);
}

TensorRule::TensorRule(int n, std::vector<AxisRule> axes) : n_(n), axes_(std::move(axes)) {
    if (n != 1 && n != 2) throw InvalidArgument("tensor rule dimension n must be 1 or 2");
    if (axes_.size() != static_cast<std::size_t>(2 * n)) throw InvalidArgument("tensor rule needs 2n axes");
}

std::size_t TensorRule::size() const {
    std::size_t s = 1;
    for (const auto& a : axes_) s *= a.size();
    return s;
}

PhasePoint TensorRule::node(std::size_t index) const {
    PhasePoint p(n_);
    for (int a = 0; a < 2 * n_; ++a) {
        const std::size_t m = axes_[a].size();
        p[a] = axes_[a].nodes[index % m];
        index /= m;
    }
    return p;
}

double TensorRule::weight(std::size_t index) const {
    double w = 1.0;
    for (int a = 0; a < 2 * n_; ++a) {
        const std::size_t m = axes_[a].size();
        w *= axes_[a].weights[index % m];
        index /= m;
    }
    return w;
}

std::vector<PhasePoint> TensorRule::nodes() const {
    std::vector<PhasePoint> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(node(i));
    return out;
}

std::vector<double> TensorRule::weights() const {
    std::vector<double> w(size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = weight(i);
    return w;
}

double TensorRule::weight_sum() const {
    double s = 1.0;
    for (const auto& a : axes_) {
        double t = 0.0;
        for (double w : a.weights) t += w;
        s *= t;
    }
    return s;
}

namespace {

std::vector<AxisRule> hermite_axes(int n, const std::vector<int>& m, const PhasePoint& center, double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("Gauss-Hermite scale must be positive");
    if (center.n() != n) throw InvalidArgument("Gauss-Hermite center has wrong dimension");
    if (m.size() != static_cast<std::size_t>(2 * n)) throw InvalidArgument("need one node count per axis");
    std::vector<AxisRule> axes;
    for (int a = 0; a < 2 * n; ++a) {
        const AxisRule& base = hermite_axis(m[a]);
        AxisRule r;
        r.nodes.resize(base.size());
        r.weights.resize(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            r.nodes[i] = center[a] + scale * base.nodes[i];
            r.weights[i] = scale * base.weights[i];
        }
        axes.push_back(std::move(r));
    }
    return axes;
}

std::vector<AxisRule> box_axes(int n, int m, double radius, const PhasePoint* center) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("box radius must be positive");
    std::vector<AxisRule> axes;
    for (int a = 0; a < 2 * n; ++a) {
        const double c = center ? (*center)[a] : 0.0;
        axes.push_back(legendre_axis(m, c - radius, c + radius));
    }
    return axes;
}

} // namespace

GaussHermiteRule::GaussHermiteRule(int n, int m, const PhasePoint& center, double scale)
    : GaussHermiteRule(n, std::vector<int>(static_cast<std::size_t>(2 * n), m), center, scale) {}

GaussHermiteRule::GaussHermiteRule(int n, std::vector<int> m, const PhasePoint& center, double scale)
    : TensorRule(n, hermite_axes(n, m, center, scale)), center_(center), scale_(scale) {}

BoxRule::BoxRule(int n, int m, double radius) : TensorRule(n, box_axes(n, m, radius, nullptr)), radius_(radius) {}

BoxRule::BoxRule(int n, int m, double radius, const PhasePoint& center)
    : TensorRule(n, box_axes(n, m, radius, &center)), radius_(radius) {}

std::vector<cplx> sample_nodes(const Integrand& f, const TensorRule& rule) {
    std::vector<cplx> values(rule.size());
    parallel_for(values.size(), [&](std::size_t i) { values[i] = f(rule.node(i)); });
    return values;
}

namespace {

void check_finite(const TensorRule& rule, const std::vector<cplx>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
            throw IntegrationFailure("non-finite integrand value at node " + rule.node(i).str(),
                                     rule.node(i).to_vector());
    }
}

} // namespace

cplx weighted_sum(const TensorRule& rule, const std::vector<cplx>& values) {
    check_finite(rule, values);
    const std::vector<double> w = rule.weights();
    return simd::pairwise_wsum(values.size(), w.data(), values.data());
}

double weighted_abs_sum(const TensorRule& rule, const std::vector<cplx>& values) {
    check_finite(rule, values);
    const std::vector<double> w = rule.weights();
    return simd::pairwise_wabs(values.size(), w.data(), values.data());
}

cplx integrate_gh(const Integrand& f, const GaussHermiteRule& rule) { return weighted_sum(rule, sample_nodes(f, rule)); }

cplx integrate_box(const Integrand& f, const BoxRule& rule) { return weighted_sum(rule, sample_nodes(f, rule)); }

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::divergent: return "divergent";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::invalid: return "invalid";
    }
    return "invalid";
}

std::vector<ScanEntry> convergence_scan(const Integrand& f, int n, int m, const std::vector<double>& radii,
                                        const PhasePoint* center) {
    if (radii.empty()) throw InvalidArgument("convergence scan needs at least one radius");
    std::vector<ScanEntry> out;
    for (double R : radii) {
        BoxRule rule = center ? BoxRule(n, m, R, *center) : BoxRule(n, m, R);
        out.push_back({R, integrate_box(f, rule)});
    }
    return out;
}

Verdict classify_scan(const std::vector<ScanEntry>& scan, const ScanPolicy& policy) {
    for (const auto& e : scan)
        if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) return Verdict::invalid;
    if (scan.size() < 2) return Verdict::inconclusive;
    bool growing = true;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        if (!(std::abs(scan[i].value) > (1.0 + policy.growth) * std::abs(scan[i - 1].value))) growing = false;
    }
    if (growing) return Verdict::divergent;
    const cplx last = scan.back().value;
    const cplx prev = scan[scan.size() - 2].value;
    const double ref = std::max(std::abs(last), policy.abs_floor);
    if (std::abs(last - prev) <= policy.rel_tol * ref) return Verdict::converged;
    return Verdict::inconclusive;
}

int hermite_nodes_for_frequency(int base, double omega) {
    if (base < 1) throw InvalidArgument("quadrature node count must be >= 1");
    const double need = std::ceil(0.5 * omega * omega) + 20.0;
    if (need <= base) return base;
    const int m = (static_cast<int>(need) + 3) / 4 * 4;
    return std::min(m, 400);
}

} // namespace phq
