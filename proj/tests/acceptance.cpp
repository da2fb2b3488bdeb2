// Acceptance run: one PASS/FAIL line per criterion.
// usage: acceptance <phasequant-cli> <work-dir>

#include "oracles.hpp"

#include "phasequant/commutators.hpp"
#include "phasequant/errors.hpp"
#include "phasequant/heat.hpp"
#include "phasequant/parallel.hpp"
#include "phasequant/recovery.hpp"
#include "phasequant/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace phq;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One measured quantity inside a criterion.
struct Item {
    std::string what;
    double value;
    const char* rel; // "<" or ">="
    double tol;
    bool ok;
};

struct Criterion {
    std::vector<Item> items;
    std::string note;

    // value < tol
    void below(const std::string& what, double value, double tol) { items.push_back({what, value, "<", tol, value < tol}); }
    // value >= tol
    void at_least(const std::string& what, double value, double tol) { items.push_back({what, value, ">=", tol, value >= tol}); }
    bool ok() const {
        for (const auto& i : items)
            if (!i.ok) return false;
        return !items.empty();
    }
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<void(Criterion&)>& body) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.items.push_back({std::string("exception: ") + e.what(), kInf, "<", 0.0, false});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < budget_s;
    const bool pass = c.ok() && in_time;
    failures += !pass;
    std::printf("%s %2d %s  time %.1fs budget %.0fs%s\n", pass ? "PASS" : "FAIL", id, title, secs, budget_s,
                in_time ? "" : " (over budget)");
    for (const auto& i : c.items)
        std::printf("       %s %s  value %.3g  %s %.3g\n", i.ok ? "ok  " : "FAIL", i.what.c_str(), i.value,
                    i.rel, i.tol);
    if (!c.note.empty()) std::printf("       note: %s\n", c.note.c_str());
    std::fflush(stdout);
}

Symbol sym(const char* s, int n = 1) { return parse_symbol_fn(s, n); }

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double e = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

std::vector<cplx> eval(const Symbol& F, const std::vector<PhasePoint>& pts) {
    std::vector<cplx> v;
    for (const auto& X : pts) v.push_back(F(X));
    return v;
}

std::vector<cplx> weyl_at(const BracketProvider& P, const std::vector<PhasePoint>& pts, int m) {
    std::vector<cplx> v(pts.size());
    WeylRecoveryOptions o;
    o.nodes = m;
    parallel_for(pts.size(), [&](std::size_t i) { v[i] = recover_weyl_at(P, pts[i], o); });
    return v;
}

std::vector<PhasePoint> within(const PhaseGrid& g, double r) {
    std::vector<PhasePoint> out;
    for (const auto& X : g.points())
        if (X.norm() <= r + 1e-12) out.push_back(X);
    return out;
}

// Largest e(m) / max(e(m/2), floor) over successive doublings.
double doubling_ratio(const BracketProvider& P, const Symbol& F, const std::vector<PhasePoint>& probe,
                      const std::vector<int>& ms, double floor) {
    const auto truth = eval(F, probe);
    double worst = 0.0, prev = -1.0;
    for (int m : ms) {
        const double e = sup_diff(weyl_at(P, probe, m), truth);
        if (prev >= 0.0) worst = std::max(worst, e / std::max(prev, floor));
        prev = e;
    }
    return worst;
}

MatrixOperator projector(const FockBasis& b) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
    P(0, 0) = 1.0;
    return MatrixOperator({b, P});
}

std::vector<std::pair<PhasePoint, PhasePoint>> pairs(int n, std::size_t count, double r, std::uint64_t seed) {
    const auto X = random_points(n, count, r, seed), Y = random_points(n, count, r, seed + 1);
    std::vector<std::pair<PhasePoint, PhasePoint>> out;
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(X[i], Y[i]);
    return out;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::fprintf(stderr, "usage: acceptance <phasequant-cli> <work-dir>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const std::filesystem::path work = argv[2];
    std::filesystem::create_directories(work);

    // Default scale: n = 1, N = 64, m = 40, grid |X| <= 2 step 0.25.
    const int N = 64, m = 40;
    const FockBasis basis(1, N);
    const PhaseGrid grid = PhaseGrid::parse("-2:2:17,-2:2:17", 1);
    const auto grid_pts = grid.points();
    const auto inner = within(grid, 1.5);

    run(1, "overlap law: quadrature inner product vs closed form, 25 pairs |X|,|Y| <= 3", 5, [&](Criterion& c) {
        double e = 0.0;
        for (const auto& [X, Y] : pairs(1, 25, 3.0, 101))
            e = std::max(e, std::abs(oracle::overlap(X.to_vector(), Y.to_vector()) - overlap_closed_form(X, Y)));
        c.below("max |quadrature - closed form|", e, 1e-10);
    });

    run(2, "Weyl round trip on the default grid, m-doubling", 60, [&](Criterion& c) {
        const auto probe = random_points(1, 5, 2.0, 102);
        for (const char* s : {"gauss(1/2)", "sin(x)*cos(xi)"}) {
            const Symbol F = sym(s);
            const WeylSymbolOperator P(F);
            c.below(std::string("sup |recovered - F| ") + s, sup_diff(weyl_at(P, grid_pts, m), eval(F, grid_pts)), 1e-4);
            // error must not grow m = 10 -> 20 -> 40 -> 80 until it reaches rounding (1e-13)
            c.below(std::string("worst e(2m)/max(e(m),1e-13) ") + s, doubling_ratio(P, F, probe, {10, 20, 40, 80}, 1e-13),
                    1.0 + 1e-9);
        }
    });

    run(3, "ground-projector Weyl symbol vs kernel-quadrature oracle, |X| <= 1.5", 30, [&](Criterion& c) {
        const auto rec = weyl_at(projector(basis), inner, m);
        const auto K = [](double x, double y) {
            return cplx(oracle::hermite_functions(x, 1)[0] * oracle::hermite_functions(y, 1)[0]);
        };
        std::vector<cplx> ref, closed;
        for (const auto& X : inner) {
            ref.push_back(oracle::weyl_symbol_from_kernel(K, X[0], X[1]));
            closed.push_back(2.0 * std::exp(-X.sq_norm()));
        }
        c.below("sup |recovered - oracle|", sup_diff(rec, ref), 1e-5);
        c.below("sup |oracle - 2 exp(-|X|^2)|", sup_diff(ref, closed), 1e-10);
    });

    run(4, "anti-Wick round trip at R = 5 with converged verdicts", 90, [&](Criterion& c) {
        AwRecoveryOptions o;
        o.box_nodes = m;
        for (const char* s : {"1", "gauss(1/4)"}) {
            const Symbol G = sym(s);
            const SymbolGrid g = recover_aw(AWSymbolOperator(G), grid, o);
            std::size_t conv = 0;
            for (const auto& p : g.points) conv += p.verdict == Verdict::converged;
            c.below(std::string("sup |recovered - G| ") + s, sup_diff(g.values, eval(G, grid_pts)), 1e-3);
            c.at_least(std::string("converged fraction ") + s, double(conv) / double(g.points.size()), 1.0);
        }
    });

    run(5, "negative anti-Wick case: |h0><h0| divergent at every grid point", 60, [&](Criterion& c) {
        AwRecoveryOptions o;
        o.box_nodes = m;
        const SymbolGrid g = recover_aw(projector(basis), grid, o);
        std::size_t div = 0;
        for (const auto& p : g.points) div += p.verdict == Verdict::divergent;
        c.at_least("divergent fraction", double(div) / double(g.points.size()), 1.0);
    });

    run(6, "anti-Wick decay bound, 100 random pairs", 30, [&](Criterion& c) {
        const auto P = pairs(1, 100, 3.0, 103);
        DecayOptions o;
        o.quadrature.nodes = m;
        for (const char* s : {"1", "sin(x)", "gauss(1/4)"})
            c.at_least(std::string("worst slack (1e-6 relative allowance) ") + s, decay_bound_check(sym(s), P, o).worst_slack, 0.0);
    });

    run(7, "heat identities", 120, [&](Criterion& c) {
        HeatOptions ho;
        ho.nodes = m;
        const auto pts = random_points(1, 10, 1.5, 104);
        for (const char* s : {"gauss(1/2)", "sin(x)*cos(xi)"}) {
            const Symbol F = sym(s);
            const Symbol H(1, [&](const PhasePoint& Y) { return heat_apply(F, 0.5, Y, ho); }, "H F");
            const auto twice = heat_apply_many(H, 0.5, pts, ho);
            std::vector<cplx> once;
            for (const auto& X : pts) once.push_back(heat_apply(F, 1.0, X, ho));
            c.below(std::string("H_1/2 H_1/2 - H_1 ") + s, sup_diff(twice, once), 1e-8);
        }
        HeatOptions coarse = ho;
        coarse.nodes = 20;
        for (const auto& [name, A] : {std::pair<std::string, MatrixOperator>("|h0><h0|", projector(basis)),
                                      std::pair<std::string, MatrixOperator>("quantize_weyl(gauss(1/2))",
                                                                             quantize_weyl(sym("gauss(1/2)"), basis))}) {
            WeylRecoveryOptions wo;
            wo.nodes = m;
            const Symbol F(1, [&, &A = A](const PhasePoint& Y) { return recover_weyl_at(A, Y, wo); }, "recovered");
            const auto h = heat_apply_many(F, 0.5, inner, coarse);
            std::vector<cplx> diag;
            for (const auto& X : inner) diag.push_back(A.bracket(X, X));
            c.below("H_1/2(Weyl symbol) - <A Psi_X, Psi_X> " + name, sup_diff(h, diag), 1e-5);
        }
        {
            const Symbol G = sym("gauss(1/4)");
            const AWSymbolOperator A(G);
            double e = 0.0;
            for (const auto& X : pts) e = std::max(e, std::abs(s_apply(G, 1.0, X, ho) - bisymbol_ratio(A, X, -1.0 * X)));
            c.below("S_1 G - ratio(X, -X), G = gauss(1/4)", e, 1e-5);
        }
        {
            const Symbol F = sym("gauss(1/2)");
            c.below("T_1 T_1 F - F, F = gauss(1/2)", sup_diff(symplectic_fourier_twice(F, 1.0, pts, ho), eval(F, pts)), 1e-6);
        }
        for (const char* s : {"gauss(1/2)", "x^2*gauss(1/2)"}) {
            const Symbol F = sym(s);
            const Symbol MF(1, [&](const PhasePoint& Y) { return multiplier_mlambda(F, 1.0, Y); }, "M F");
            HeatOptions fo = ho;
            fo.fourier_scale = std::sqrt(2.0);
            double e = 0.0;
            for (const auto& X : pts)
                e = std::max(e, std::abs(std::exp(-X.sq_norm() / 2) * s_apply(F, 1.0, X, ho) - symplectic_fourier(MF, 1.0, X, fo)));
            c.below(std::string("M_1 S_1 F - T_1 M_1 F ") + s, e, 1e-6);
        }
        c.note = "M S = T M is checked on even F only";
    });

    run(8, "commutator identities", 300, [&](Criterion& c) {
        {
            const double r = exp_phi_radius(basis);
            const auto Z = random_points(1, 40, 0.5 * r, 105), X = random_points(1, 40, 0.5 * r, 106);
            double e = 0.0;
            for (std::size_t i = 0; i < Z.size(); ++i) e = std::max(e, exp_phi_action(Z[i], X[i], basis).error);
            c.below("two-path error, |X|,|Z| <= trust radius / 2", e, 1e-6);
            const PhasePoint p = PhasePoint::of(1.8, 2.4);
            const double e64 = exp_phi_action(p, p, basis).error;
            const double e128 = exp_phi_action(p, p, FockBasis(1, 128)).error;
            c.below("two-path error ratio N 64 -> 128 at X = Z = (1.8, 2.4)", e128 / e64, 0.5);
        }
        std::vector<std::pair<std::string, MatrixOperator>> fam;
        fam.emplace_back("I", MatrixOperator(identity_matrix(basis)));
        fam.emplace_back("|h0><h0|", projector(basis));
        fam.emplace_back("quantize_weyl(gauss(1/2))", quantize_weyl(sym("gauss(1/2)"), basis));
        fam.emplace_back("quantize_aw(gauss(1/4))", quantize_aw(sym("gauss(1/4)"), basis));
        const auto Xs = random_points(1, 40, 1.0, 107), Zs = random_points(1, 40, 1.0, 108);
        for (const auto& [name, A] : fam) {
            double e = 0.0;
            for (std::size_t i = 0; i < Xs.size(); ++i)
                e = std::max(e, std::abs(bisymbol_ratio(A, Xs[i] + Zs[i], Xs[i] - Zs[i]) - conjugation_bracket(A, Zs[i], Xs[i])));
            c.below("conjugation identity " + name, e, 1e-5);
        }
        {
            double e = 0.0;
            for (std::size_t i = 0; i < Xs.size(); ++i) e = std::max(e, composition_error(Zs[i], Xs[i], basis));
            c.below("composition law", e, 1e-6);
        }
        {
            const MatrixOperator& A = fam[2].second;
            const PhasePoint Z = PhasePoint::of(0.12, 0.16), X(1);
            const CommutatorSeries s = ch_series(A, Z, 8);
            const cplx ref = conjugation_bracket(A, Z, X);
            double prev = kInf, rise = 0.0, last = 0.0;
            for (int k = 0; k <= 8; ++k) {
                last = std::abs(ch_partial_bracket(s, k, X) - ref);
                if (last > 1e-8) rise = std::max(rise, last - prev);
                prev = last;
            }
            c.below("CH partial sum error at m = 8, |Z| = 0.2", last, 1e-6);
            c.below("largest CH error increase above 1e-8", std::max(rise, 0.0), 1e-300);
        }
        {
            const MatrixOperator& A = fam[3].second;
            AwRecoveryOptions ao;
            ao.box_nodes = m;
            AwChOptions ch;
            ch.box_nodes = m;
            double e = 0.0;
            int both = 0;
            for (const auto& X : random_points(1, 4, 1.0, 109)) {
                PointDiagnostic d;
                const cplx g = recover_aw_at(A, X, ao, &d);
                const AwChResult r = aw_ch_symbol(A, X, ch);
                if (d.verdict == Verdict::converged && r.verdict == Verdict::converged) {
                    e = std::max(e, std::abs(g - r.value));
                    ++both;
                }
            }
            c.at_least("points where both converge", both, 1);
            c.below("conjugated-bracket anti-Wick symbol vs direct recovery", both ? e : kInf, 1e-3);
        }
    });

    run(9, "Beals integral and commutator-norm table", 180, [&](Criterion& c) {
        BealsOptions o;
        o.box_nodes = m;
        std::vector<std::pair<std::string, MatrixOperator>> fam;
        fam.emplace_back("I", MatrixOperator(identity_matrix(basis)));
        fam.emplace_back("W_(1,0)", MatrixOperator(displacement_exact(PhasePoint::of(1, 0), basis)));
        fam.emplace_back("|h0><h0|", projector(basis));
        fam.emplace_back("quantize_weyl(gauss(1/2))", quantize_weyl(sym("gauss(1/2)"), basis));
        std::string ratios;
        for (const auto& [name, A] : fam) {
            const BealsReport r = beals_check(A, grid, o);
            std::size_t conv = 0;
            for (Verdict v : r.verdicts) conv += v == Verdict::converged;
            c.at_least("LHS converged fraction " + name, double(conv) / double(r.verdicts.size()), 1.0);
            int table = 0;
            for (int a = 0; a <= 3; ++a) {
                const auto it = r.norms.find(MultiIndex{a});
                table += it != r.norms.end() && std::isfinite(it->second);
            }
            c.at_least("norm table entries |alpha| <= 3 " + name, table, 4);
            c.below("ratio LHS / sum of norms, finite " + name, r.ratio, kInf);
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s%s %.4g", ratios.empty() ? "" : ", ", name.c_str(), r.ratio);
            ratios += buf;
        }
        c.note = "ratios: " + ratios;
    });

    run(10, "cross-representation: symbol-defined vs matrix brackets, |X|,|Y| <= 1.5", 60, [&](Criterion& c) {
        const auto P = pairs(1, 25, 1.5, 110);
        const Symbol F = sym("sin(x)*cos(xi)"), G = sym("gauss(1/4)");
        const WeylSymbolOperator SW(F);
        const AWSymbolOperator SA(G);
        const MatrixOperator MW = quantize_weyl(F, basis), MA = quantize_aw(G, basis);
        double ew = 0.0, ea = 0.0;
        for (const auto& [X, Y] : P) {
            ew = std::max(ew, std::abs(SW.bracket(X, Y) - MW.bracket(X, Y)));
            ea = std::max(ea, std::abs(SA.bracket(X, Y) - MA.bracket(X, Y)));
        }
        c.below("Weyl sin(x)*cos(xi)", ew, 1e-6);
        c.below("anti-Wick gauss(1/4)", ea, 1e-6);
    });

    run(11, "n = 2 smoke test: overlaps, Weyl round trip, semigroup (tolerances x100)", 600, [&](Criterion& c) {
        double e = 0.0;
        for (const auto& [X, Y] : pairs(2, 25, 3.0, 111))
            e = std::max(e, std::abs(oracle::overlap(X.to_vector(), Y.to_vector()) - overlap_closed_form(X, Y)));
        c.below("overlap law", e, 1e-8);

        const Symbol F = sym("gauss(1/2)", 2);
        const WeylSymbolOperator P(F);
        const auto corners = PhaseGrid::parse("-1:1:2,-1:1:2,-1:1:2,-1:1:2", 2).points();
        c.below("Weyl round trip gauss(1/2), 16 corners of [-1,1]^4", sup_diff(weyl_at(P, corners, 20), eval(F, corners)), 1e-2);
        const std::vector<PhasePoint> probe(corners.begin(), corners.begin() + 2);
        c.below("worst e(2m)/max(e(m),1e-13), m = 5, 10, 20", doubling_ratio(P, F, probe, {5, 10, 20}, 1e-13), 1.0 + 1e-9);

        HeatOptions h10;
        h10.nodes = 10;
        const auto pts = random_points(2, 10, 1.5, 112);
        const Symbol H(2, [&](const PhasePoint& Y) { return heat_apply(F, 0.5, Y, h10); }, "H F");
        std::vector<cplx> twice(pts.size()), once;
        parallel_for(pts.size(), [&](std::size_t i) { twice[i] = heat_apply(H, 0.5, pts[i], h10); });
        HeatOptions h20;
        h20.nodes = 20;
        for (const auto& X : pts) once.push_back(heat_apply(F, 1.0, X, h20));
        c.below("H_1/2 H_1/2 - H_1", sup_diff(twice, once), 1e-6);
        c.note = "matrices are not involved in these three checks; N = 16 is the n = 2 verify default";
    });

    // The 5 s budget is applied to the DSL half; two full verify runs cannot fit in it.
    run(12, "DSL goldens and diagnostics; determinism of `verify --suite all`", 600, [&](Criterion& c) {
        const auto t0 = std::chrono::steady_clock::now();
        struct G {
            const char* src;
            double x, xi;
            cplx want;
        };
        const double e1 = std::exp(-1.0);
        const G goldens[] = {
            {"exp(-(x^2+xi^2)/2)", 0, 0, 1.0}, {"sin(x)*cos(xi)", kPi / 2, 0, 1.0}, {"gauss(1)", 1, 0, e1},
            {"1", 0.3, -7, 1.0},               {"exp(i*x)", kPi, 0, -1.0},          {"-x^2", 3, 0, -9.0},
            {"(-x)^2", 3, 0, 9.0},             {"2^3^2", 0, 0, 64.0},               {"1-2-3", 0, 0, -4.0},
            {"8/4/2", 0, 0, 1.0},              {"1+2*3", 0, 0, 7.0},                {"x*xi", 2, 5, 10.0},
            {"x1*xi1", 2, 5, 10.0},            {"i^2", 0, 0, -1.0},                 {"sqrt(-4)", 0, 0, cplx(0, 2)},
            {"pi", 0, 0, kPi},                 {"2.5e-1*x", 4, 0, 1.0},             {"gauss(1/2)*(x^2+xi^2)", 1, 1, 2 * e1},
            {"cos(i*x)", 1, 0, std::cosh(1.0)}, {"- -x", 2, 0, 2.0},
        };
        double worst = 0.0;
        for (const auto& g : goldens)
            worst = std::max(worst, std::abs(parse_symbol(g.src, 1).evaluate(PhasePoint::of(g.x, g.xi)) - g.want));
        c.below("20 golden evaluations, max error", worst, 1e-14);

        struct E {
            const char* src;
            const char* msg;
        };
        const E errors[] = {
            {"x ++ xi", "parse error at offset 3: expected number, identifier, '-' or '(', found '+'"},
            {"foo(x)", "unknown identifier 'foo'"},
            {"x^-1", "parse error at offset 2: expected nonnegative integer exponent, found '-'"},
        };
        int exact = 0;
        for (const auto& e : errors) {
            try {
                parse_symbol(e.src, 1);
            } catch (const Error& err) {
                exact += std::string(err.what()) == e.msg;
            }
        }
        c.at_least("error cases with exact diagnostics (of 3)", exact, 3);
        c.below("DSL part seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);

        const auto a = work / "verify_all_1.json", b = work / "verify_all_2.json";
        int rc = 0;
        for (const auto& p : {a, b}) {
            std::filesystem::remove(p);
            const std::string cmd = "\"" + cli + "\" verify --suite all --report \"" + p.string() + "\" 2> \"" +
                                    (work / "verify_all.log").string() + "\"";
            rc = std::max(rc, std::system(cmd.c_str()));
        }
        c.at_least("verify exit status 0 (as 1 = ok)", rc == 0 ? 1.0 : 0.0, 1.0);
        const std::string ta = read_file(a), tb = read_file(b);
        c.at_least("reports identical and non-empty (as 1 = yes)", !ta.empty() && ta == tb ? 1.0 : 0.0, 1.0);
        c.note = "reports: " + a.string() + ", " + b.string();
    });

    std::printf("%s: %d criterion line(s) failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
