#pragma once

#include "phasequant/operators.hpp"
#include "phasequant/quadrature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace phq {

enum class GridProvenance { weyl_recovered, aw_recovered, sampled_expr };
const char* grid_provenance_name(GridProvenance p);

struct PointDiagnostic {
    Verdict verdict = Verdict::converged;
    // Weyl: |value(m) - value(m/2)|. AW: relative change over the last two radii.
    double diagnostic = 0.0;
    std::vector<ScanEntry> scan;
    std::vector<ScanEntry> abs_scan;
    std::string error;
};

struct SymbolGrid {
    PhaseGrid grid;
    std::vector<cplx> values;
    GridProvenance provenance = GridProvenance::sampled_expr;
    std::vector<PointDiagnostic> points;
    int nodes = 0;
    int box_nodes = 0;
    std::vector<double> radii;
    // Largest difference between the ratio form and the phase form on the check points.
    double cross_check = 0.0;
    std::vector<std::size_t> invalid;
};

struct WeylRecoveryOptions {
    int nodes = 0; // 0: 40 for n = 1, 20 for n = 2
    double tol = 1e-6;
    int cross_check_points = 5;
    std::uint64_t seed = 1;
};

struct AwRecoveryOptions {
    int box_nodes = 0; // 0: 40 for n = 1, 20 for n = 2
    std::vector<double> radii{3.0, 4.0, 5.0};
    ScanPolicy policy{0.01, 1e-2};
};

// F(X) = pi^{-n} int <A Psi_{X+Z}, Psi_{X-Z}> e^{i sigma(X,Z)} dZ on a Gauss-Hermite rule.
cplx recover_weyl_at(const BracketProvider& P, const PhasePoint& X, const WeylRecoveryOptions& opts = {},
                     PointDiagnostic* diag = nullptr);
SymbolGrid recover_weyl(const BracketProvider& P, const PhaseGrid& grid, const WeylRecoveryOptions& opts = {});

// G(X) = (2 pi)^{-n} int <A Psi_{X+Z}, Psi_{X-Z}> e^{i sigma(X,Z)} e^{|Z|^2/2} dZ on growing boxes.
cplx recover_aw_at(const BracketProvider& P, const PhasePoint& X, const AwRecoveryOptions& opts = {},
                   PointDiagnostic* diag = nullptr);
SymbolGrid recover_aw(const BracketProvider& P, const PhaseGrid& grid, const AwRecoveryOptions& opts = {});

// Divergent if the absolute scan diverges; converged only if both scans converge.
Verdict aw_scan_verdict(const std::vector<ScanEntry>& scan, const std::vector<ScanEntry>& abs_scan, const ScanPolicy& policy);

SymbolGrid sample_symbol(const Symbol& F, const PhaseGrid& grid);

enum class ConditionVerdict { satisfied, divergent, inconclusive };
const char* condition_verdict_name(ConditionVerdict v);

struct ConditionReport {
    PhaseGrid grid;
    std::vector<double> values;
    std::vector<std::vector<ScanEntry>> scans;
    std::vector<Verdict> scan_verdicts;
    double sup = 0.0;
    ConditionVerdict verdict = ConditionVerdict::inconclusive;
};

struct ConditionOptions {
    int nodes = 0;
    int box_nodes = 0;
    std::vector<double> radii{3.0, 4.0, 5.0, 6.0};
    ScanPolicy policy{0.01, 1e-2};
};

// pi^{-n} int |ratio(X+Z, X-Z)| e^{-|Z|^2} dZ; the verdict comes from box scans of the same integral.
ConditionReport weyl_condition(const BracketProvider& P, const PhaseGrid& grid, const ConditionOptions& opts = {});
// (2 pi)^{-n} int |ratio(X+Z, X-Z)| e^{-|Z|^2/2} dZ by box scans.
ConditionReport aw_condition(const BracketProvider& P, const PhaseGrid& grid, const ConditionOptions& opts = {});

struct DecayPair {
    PhasePoint X, Y;
    double value = 0.0;
    double bound = 0.0;
    double slack = 0.0; // (bound (1 + 1e-6) - value) / bound
};

struct DecayReport {
    double sup_g = 0.0;
    std::vector<DecayPair> pairs;
    double worst_slack = 0.0;
    std::vector<std::size_t> violations;
    bool holds() const { return violations.empty(); }
};

struct DecayOptions {
    QuadratureSettings quadrature;
    double sample_half_width = 6.0;
    int samples_per_axis = 0; // 0: 121 for n = 1, 25 for n = 2
};

// Checks |aw_bracket(G, X, Y)| <= sup|G| e^{-|X-Y|^2/8} with sup|G| from a dense sample.
DecayReport decay_bound_check(const Symbol& G, const std::vector<std::pair<PhasePoint, PhasePoint>>& pairs,
                              const DecayOptions& opts = {});

} // namespace phq
