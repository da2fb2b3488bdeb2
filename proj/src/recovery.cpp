#include "phasequant/recovery.hpp"

#include "phasequant/errors.hpp"
#include "phasequant/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace phq {

namespace {

int default_nodes(int requested, int n) { return requested > 0 ? requested : (n == 1 ? 40 : 20); }

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Phase form integrand values on a Gauss-Hermite rule, weight e^{-|Z|^2} removed.
std::vector<cplx> weyl_integrand(const BracketProvider& P, const PhasePoint& X, const GaussHermiteRule& rule,
                                 std::vector<cplx>* brackets = nullptr) {
    std::vector<cplx> b = P.symmetric_brackets(X, rule);
    std::vector<cplx> f(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const PhasePoint Z = rule.node(i);
        f[i] = b[i] * std::exp(cplx(Z.sq_norm(), symplectic(X, Z)));
    }
    if (brackets) *brackets = std::move(b);
    return f;
}

cplx weyl_value(const BracketProvider& P, const PhasePoint& X, int m, std::vector<cplx>* brackets = nullptr,
                GaussHermiteRule* used = nullptr) {
    const int n = X.n();
    GaussHermiteRule rule(n, m, PhasePoint(n), 1.0);
    const cplx v = std::pow(kPi, -n) * weighted_sum(rule, weyl_integrand(P, X, rule, brackets));
    if (used) *used = rule;
    return v;
}

void check_provider(const BracketProvider& P, const PhaseGrid& grid) {
    if (P.n() != grid.n()) throw InvalidArgument("provider and grid have different n");
}

std::vector<std::size_t> check_points(std::size_t count, int k, std::uint64_t seed) {
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
    idx.resize(std::min<std::size_t>(count, static_cast<std::size_t>(std::max(k, 0))));
    std::sort(idx.begin(), idx.end());
    return idx;
}

struct AwScan {
    std::vector<ScanEntry> scan, abs_scan;
};

AwScan aw_scan(const BracketProvider& P, const PhasePoint& X, int box_nodes, const std::vector<double>& radii) {
    const int n = X.n();
    AwScan out;
    for (double R : radii) {
        BoxRule box(n, box_nodes, R);
        const std::vector<cplx> b = P.symmetric_brackets(X, box);
        std::vector<cplx> f(b.size()), a(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) {
            const PhasePoint Z = box.node(i);
            const double g = std::exp(0.5 * Z.sq_norm());
            f[i] = b[i] * g * std::exp(cplx(0.0, symplectic(X, Z)));
            a[i] = b[i] * g;
        }
        const double c = std::pow(2.0 * kPi, -n);
        out.scan.push_back({R, c * weighted_sum(box, f)});
        out.abs_scan.push_back({R, c * weighted_abs_sum(box, a)});
    }
    return out;
}

double relative_change(const std::vector<ScanEntry>& scan) {
    if (scan.size() < 2) return 0.0;
    const cplx a = scan.back().value, b = scan[scan.size() - 2].value;
    return std::abs(a - b) / std::max(std::abs(a), 1e-300);
}

} // namespace

// The signed integrand of a non-decaying bracket can oscillate without growing,
// so divergence is read from the absolute scan.
Verdict aw_scan_verdict(const std::vector<ScanEntry>& scan, const std::vector<ScanEntry>& abs_scan, const ScanPolicy& policy) {
    const Verdict va = classify_scan(abs_scan, policy);
    if (va == Verdict::invalid) return Verdict::invalid;
    if (va == Verdict::divergent) return Verdict::divergent;
    const Verdict vs = classify_scan(scan, policy);
    if (vs == Verdict::converged && va == Verdict::converged) return Verdict::converged;
    if (vs == Verdict::invalid) return Verdict::invalid;
    return Verdict::inconclusive;
}

const char* grid_provenance_name(GridProvenance p) {
    switch (p) {
    case GridProvenance::weyl_recovered: return "weyl-recovered";
    case GridProvenance::aw_recovered: return "aw-recovered";
    case GridProvenance::sampled_expr: return "sampled-expr";
    }
    return "?";
}

const char* condition_verdict_name(ConditionVerdict v) {
    switch (v) {
    case ConditionVerdict::satisfied: return "satisfied";
    case ConditionVerdict::divergent: return "divergent";
    case ConditionVerdict::inconclusive: return "inconclusive";
    }
    return "?";
}

cplx recover_weyl_at(const BracketProvider& P, const PhasePoint& X, const WeylRecoveryOptions& opts,
                     PointDiagnostic* diag) {
    if (P.n() != X.n()) throw InvalidArgument("provider and point have different n");
    const int m = default_nodes(opts.nodes, X.n());
    const cplx v = weyl_value(P, X, m);
    if (diag) {
        const cplx coarse = weyl_value(P, X, std::max(2, m / 2));
        diag->diagnostic = std::abs(v - coarse);
        diag->verdict = diag->diagnostic <= opts.tol * std::max(1.0, std::abs(v)) ? Verdict::converged : Verdict::inconclusive;
    }
    return v;
}

SymbolGrid recover_weyl(const BracketProvider& P, const PhaseGrid& grid, const WeylRecoveryOptions& opts) {
    check_provider(P, grid);
    const int n = grid.n();
    SymbolGrid out;
    out.grid = grid;
    out.provenance = GridProvenance::weyl_recovered;
    out.nodes = default_nodes(opts.nodes, n);
    out.values.assign(grid.size(), cplx(0.0, 0.0));
    out.points.assign(grid.size(), {});
    parallel_for(grid.size(), [&](std::size_t i) {
        try {
            out.values[i] = recover_weyl_at(P, grid.point(i), opts, &out.points[i]);
        } catch (const Error& e) {
            out.values[i] = cplx(std::nan(""), std::nan(""));
            out.points[i].verdict = Verdict::invalid;
            out.points[i].error = e.what();
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (out.points[i].verdict == Verdict::invalid) out.invalid.push_back(i);

    // The ratio form divides by the overlap instead of multiplying by e^{|Z|^2 + i sigma}.
    for (std::size_t i : check_points(grid.size(), opts.cross_check_points, opts.seed)) {
        if (out.points[i].verdict == Verdict::invalid) continue;
        const PhasePoint X = grid.point(i);
        std::vector<cplx> b;
        GaussHermiteRule rule(n, 1, PhasePoint(n), 1.0);
        weyl_value(P, X, out.nodes, &b, &rule);
        std::vector<cplx> ratio(b.size());
        for (std::size_t k = 0; k < b.size(); ++k) {
            const PhasePoint Z = rule.node(k);
            ratio[k] = b[k] / overlap_closed_form(X + Z, X - Z);
        }
        const cplx alt = std::pow(kPi, -n) * weighted_sum(rule, ratio);
        out.cross_check = std::max(out.cross_check, std::abs(alt - out.values[i]) / std::max(1.0, std::abs(alt)));
    }
    return out;
}

cplx recover_aw_at(const BracketProvider& P, const PhasePoint& X, const AwRecoveryOptions& opts, PointDiagnostic* diag) {
    if (P.n() != X.n()) throw InvalidArgument("provider and point have different n");
    if (opts.radii.empty()) throw InvalidArgument("anti-Wick recovery needs at least one radius");
    const AwScan s = aw_scan(P, X, default_nodes(opts.box_nodes, X.n()), opts.radii);
    if (diag) {
        diag->verdict = aw_scan_verdict(s.scan, s.abs_scan, opts.policy);
        diag->diagnostic = relative_change(s.scan);
        diag->scan = s.scan;
        diag->abs_scan = s.abs_scan;
    }
    return s.scan.back().value;
}

SymbolGrid recover_aw(const BracketProvider& P, const PhaseGrid& grid, const AwRecoveryOptions& opts) {
    check_provider(P, grid);
    SymbolGrid out;
    out.grid = grid;
    out.provenance = GridProvenance::aw_recovered;
    out.box_nodes = default_nodes(opts.box_nodes, grid.n());
    out.radii = opts.radii;
    out.values.assign(grid.size(), cplx(0.0, 0.0));
    out.points.assign(grid.size(), {});
    parallel_for(grid.size(), [&](std::size_t i) {
        try {
            out.values[i] = recover_aw_at(P, grid.point(i), opts, &out.points[i]);
        } catch (const Error& e) {
            out.values[i] = cplx(std::nan(""), std::nan(""));
            out.points[i].verdict = Verdict::invalid;
            out.points[i].error = e.what();
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (out.points[i].verdict == Verdict::invalid) out.invalid.push_back(i);
    return out;
}

SymbolGrid sample_symbol(const Symbol& F, const PhaseGrid& grid) {
    if (F.n() != grid.n()) throw InvalidArgument("symbol and grid have different n");
    SymbolGrid out;
    out.grid = grid;
    out.provenance = GridProvenance::sampled_expr;
    out.values.resize(grid.size());
    out.points.assign(grid.size(), {});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            out.values[i] = F(grid.point(i));
            if (!finite(out.values[i])) throw EvaluationError("non-finite value", grid.point(i).to_vector());
        } catch (const Error& e) {
            out.values[i] = cplx(std::nan(""), std::nan(""));
            out.points[i].verdict = Verdict::invalid;
            out.points[i].error = e.what();
            out.invalid.push_back(i);
        }
    }
    return out;
}

namespace {

ConditionVerdict combine(const std::vector<Verdict>& v) {
    bool all = true;
    for (Verdict x : v) {
        if (x == Verdict::divergent) return ConditionVerdict::divergent;
        if (x != Verdict::converged) all = false;
    }
    return all ? ConditionVerdict::satisfied : ConditionVerdict::inconclusive;
}

std::vector<ScanEntry> abs_box_scan(const BracketProvider& P, const PhasePoint& X, int box_nodes,
                                    const std::vector<double>& radii, double gauss_comp, double norm) {
    std::vector<ScanEntry> scan;
    for (double R : radii) {
        BoxRule box(X.n(), box_nodes, R);
        std::vector<cplx> b = P.symmetric_brackets(X, box);
        for (std::size_t i = 0; i < b.size(); ++i) b[i] *= std::exp(gauss_comp * box.node(i).sq_norm());
        scan.push_back({R, norm * weighted_abs_sum(box, b)});
    }
    return scan;
}

} // namespace

// |ratio(X+Z, X-Z)| e^{-|Z|^2} = |<A Psi_{X+Z}, Psi_{X-Z}>|
ConditionReport weyl_condition(const BracketProvider& P, const PhaseGrid& grid, const ConditionOptions& opts) {
    check_provider(P, grid);
    const int n = grid.n();
    const int m = default_nodes(opts.nodes, n);
    const int mb = default_nodes(opts.box_nodes, n);
    ConditionReport r;
    r.grid = grid;
    r.values.resize(grid.size());
    r.scans.resize(grid.size());
    r.scan_verdicts.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const PhasePoint X = grid.point(i);
        GaussHermiteRule rule(n, m, PhasePoint(n), 1.0);
        std::vector<cplx> b = P.symmetric_brackets(X, rule);
        for (std::size_t k = 0; k < b.size(); ++k) b[k] *= std::exp(rule.node(k).sq_norm());
        r.values[i] = std::pow(kPi, -n) * weighted_abs_sum(rule, b);
        r.scans[i] = abs_box_scan(P, X, mb, opts.radii, 0.0, std::pow(kPi, -n));
        r.scan_verdicts[i] = classify_scan(r.scans[i], opts.policy);
    });
    r.sup = *std::max_element(r.values.begin(), r.values.end());
    r.verdict = combine(r.scan_verdicts);
    return r;
}

ConditionReport aw_condition(const BracketProvider& P, const PhaseGrid& grid, const ConditionOptions& opts) {
    check_provider(P, grid);
    const int n = grid.n();
    const int mb = default_nodes(opts.box_nodes, n);
    ConditionReport r;
    r.grid = grid;
    r.values.resize(grid.size());
    r.scans.resize(grid.size());
    r.scan_verdicts.resize(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        r.scans[i] = abs_box_scan(P, grid.point(i), mb, opts.radii, 0.5, std::pow(2.0 * kPi, -n));
        r.values[i] = r.scans[i].back().value.real();
        r.scan_verdicts[i] = classify_scan(r.scans[i], opts.policy);
    });
    r.sup = *std::max_element(r.values.begin(), r.values.end());
    r.verdict = combine(r.scan_verdicts);
    return r;
}

DecayReport decay_bound_check(const Symbol& G, const std::vector<std::pair<PhasePoint, PhasePoint>>& pairs,
                              const DecayOptions& opts) {
    const int n = G.n();
    int k = opts.samples_per_axis > 0 ? opts.samples_per_axis : (n == 1 ? 121 : 25);
    if (k % 2 == 0) ++k; // keep the origin on the sample
    std::vector<GridAxis> axes(2 * n, GridAxis{-opts.sample_half_width, opts.sample_half_width, k});
    const PhaseGrid sample(n, axes);
    std::vector<double> mags(sample.size());
    parallel_for(sample.size(), [&](std::size_t i) { mags[i] = std::abs(G(sample.point(i))); });
    DecayReport rep;
    rep.sup_g = *std::max_element(mags.begin(), mags.end());
    rep.pairs.resize(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const auto& [X, Y] = pairs[i];
        DecayPair p{X, Y};
        p.value = std::abs(aw_bracket(G, X, Y, opts.quadrature));
        p.bound = rep.sup_g * std::exp(-(X - Y).sq_norm() / 8.0);
        p.slack = (p.bound * (1.0 + 1e-6) - p.value) / p.bound;
        rep.pairs[i] = p;
    });
    rep.worst_slack = pairs.empty() ? 0.0 : rep.pairs[0].slack;
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
        rep.worst_slack = std::min(rep.worst_slack, rep.pairs[i].slack);
        if (!(rep.pairs[i].slack >= 0.0)) rep.violations.push_back(i);
    }
    return rep;
}

} // namespace phq
