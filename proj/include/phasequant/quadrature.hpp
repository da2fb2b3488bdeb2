#pragma once

#include "phasequant/phase_space.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace phq {

struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

// m-point Gauss-Hermite rule for the weight e^{-t^2} on R. Cached per m.
const AxisRule& hermite_axis(int m);
// m-point Gauss-Legendre rule on [lo, hi].
AxisRule legendre_axis(int m, double lo, double hi);

// Tensor product of 2n one-dimensional rules; node enumeration runs axis 0 fastest.
class TensorRule {
public:
    TensorRule() = default;
    TensorRule(int n, std::vector<AxisRule> axes);

    int n() const { return n_; }
    const AxisRule& axis(int a) const { return axes_[a]; }
    const std::vector<AxisRule>& axes() const { return axes_; }
    std::size_t size() const;
    PhasePoint node(std::size_t index) const;
    double weight(std::size_t index) const;
    // All nodes and product weights, in enumeration order.
    std::vector<PhasePoint> nodes() const;
    std::vector<double> weights() const;
    double weight_sum() const;

private:
    int n_ = 1;
    std::vector<AxisRule> axes_;
};

// Integrates f(Z) e^{-|Z-center|^2/scale^2}; f excludes the Gaussian weight.
class GaussHermiteRule : public TensorRule {
public:
    GaussHermiteRule(int n, int m, const PhasePoint& center, double scale);
    // Per-axis node counts may differ.
    GaussHermiteRule(int n, std::vector<int> m, const PhasePoint& center, double scale);

    int nodes_per_axis(int a = 0) const { return static_cast<int>(axis(a).size()); }
    const PhasePoint& center() const { return center_; }
    double scale() const { return scale_; }

private:
    PhasePoint center_;
    double scale_;
};

// Gauss-Legendre tensor rule on [-R, R]^{2n} around an optional center.
class BoxRule : public TensorRule {
public:
    BoxRule(int n, int m, double radius);
    BoxRule(int n, int m, double radius, const PhasePoint& center);
    double radius() const { return radius_; }
    int nodes_per_axis() const { return static_cast<int>(axis(0).size()); }

private:
    double radius_;
};

using Integrand = std::function<cplx(const PhasePoint&)>;

// Evaluates f at every node (in parallel), checks finiteness and returns the
// node values in enumeration order.
std::vector<cplx> sample_nodes(const Integrand& f, const TensorRule& rule);

// Weighted fixed-tree sum; throws IntegrationFailure on a non-finite value.
cplx weighted_sum(const TensorRule& rule, const std::vector<cplx>& values);
double weighted_abs_sum(const TensorRule& rule, const std::vector<cplx>& values);

cplx integrate_gh(const Integrand& f, const GaussHermiteRule& rule);
cplx integrate_box(const Integrand& f, const BoxRule& rule);

enum class Verdict { converged, divergent, inconclusive, invalid };
const char* verdict_name(Verdict v);

struct ScanEntry {
    double radius;
    cplx value;
};

struct ScanPolicy {
    // Divergent when |value| grows by more than this fraction at every step.
    double growth = 0.01;
    // Converged when the last two values agree to this relative tolerance.
    double rel_tol = 1e-6;
    // Absolute floor for the relative comparison.
    double abs_floor = 1e-300;
};

std::vector<ScanEntry> convergence_scan(const Integrand& f, int n, int m, const std::vector<double>& radii,
                                        const PhasePoint* center = nullptr);
Verdict classify_scan(const std::vector<ScanEntry>& scan, const ScanPolicy& policy = {});

// Node count for a Gauss-Hermite axis that has to resolve e^{i w t} against
// e^{-t^2}: the Fourier tail is e^{-w^2/4}, so m grows like w^2/2.
int hermite_nodes_for_frequency(int base, double omega);

} // namespace phq
