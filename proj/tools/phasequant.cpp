// phasequant command-line front end.
//
// Exit codes: 0 ok, 1 failed check, 2 input error, 3 numeric failure,
// 4 recovery divergent at every grid point.

#include "phasequant/commutators.hpp"
#include "phasequant/errors.hpp"
#include "phasequant/io.hpp"
#include "phasequant/recovery.hpp"
#include "phasequant/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

using namespace phq;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInput = 2, kNumeric = 3, kDivergent = 4 };

// Collects the whole output first so nothing partial lands on disk.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
}

void warn(const std::string& msg) { std::cerr << "phasequant: warning: " << msg << "\n"; }

struct QuantizeArgs {
    std::string kind = "weyl", symbol, out;
    int n = 1, cutoff = 64, nodes = 0;
};

struct RecoverArgs {
    std::string kind = "weyl", in, symbol, as = "weyl", grid, out;
    int n = 1, cutoff = 64, nodes = 0;
};

struct VerifyArgs {
    std::string suite = "all", report;
    int n = 1, cutoff = 0, nodes = 0;
    std::uint64_t seed = 1;
    bool quick = false;
};

struct BealsArgs {
    std::string in, symbol, as = "weyl", grid = "-2:2:9,-2:2:9", out;
    int n = 1, cutoff = 64, nodes = 0, max_order = -1;
};

std::string default_grid(int n) {
    return n == 1 ? "-2:2:17,-2:2:17" : "-1:1:5,-1:1:5,-1:1:5,-1:1:5";
}

void warn_unbounded(const Symbol& F, const PhaseGrid& grid) {
    double sup = 0.0;
    for (const auto& X : grid.points()) sup = std::max(sup, std::abs(F(X)));
    if (!(sup <= 1e6)) warn("sampled |F| reaches " + format_double(sup) + " on the grid; bounded symbols are assumed");
}

// reach: how far the recovery integral samples brackets beyond the grid point.
void warn_trust(const FockBasis& basis, const PhaseGrid& grid, double reach) {
    double r = 0.0;
    for (const auto& X : grid.points()) r = std::max(r, X.norm());
    if (r + reach > trust_radius(basis))
        warn("grid radius " + format_double(r) + " plus integration reach " + format_double(reach) +
             " exceeds the trust radius " + format_double(trust_radius(basis)) + " of cutoff " +
             std::to_string(basis.cutoff) + "; matrix brackets there may be truncation-dominated");
}

MatrixOperator quantize(const std::string& kind, const Symbol& F, const FockBasis& b, int nodes) {
    QuadratureSettings q;
    q.nodes = nodes;
    if (kind == "weyl") return quantize_weyl(F, b, q);
    if (kind == "aw") return quantize_aw(F, b, q);
    throw InputError("unknown kind \"" + kind + "\" (expected weyl or aw)");
}

int cmd_quantize(const QuantizeArgs& a) {
    const Symbol F = parse_symbol_fn(a.symbol, a.n);
    const FockBasis b(a.n, a.cutoff);
    Json cfg;
    cfg["command"] = "quantize";
    cfg["kind"] = a.kind;
    cfg["symbol"] = a.symbol;
    cfg["n"] = a.n;
    cfg["cutoff"] = a.cutoff;
    QuadratureSettings q;
    q.nodes = a.nodes;
    cfg["nodes"] = q.for_matrix(a.n, a.cutoff);
    const MatrixOperator M = quantize(a.kind, F, b, a.nodes);
    std::ostringstream os;
    write_matrix_json(os, M.matrix(), cfg);
    emit(a.out, os.str());
    return kOk;
}

int cmd_recover(const RecoverArgs& a) {
    if (a.in.empty() == a.symbol.empty()) throw InputError("give exactly one of --in or --symbol");
    if (a.kind != "weyl" && a.kind != "aw") throw InputError("unknown kind \"" + a.kind + "\"");
    std::unique_ptr<BracketProvider> P;
    Json cfg;
    cfg["command"] = "recover";
    cfg["kind"] = a.kind;
    int n = a.n;
    std::optional<FockBasis> basis;
    QuadratureSettings q;
    q.nodes = a.nodes;
    std::optional<Symbol> F;
    if (!a.in.empty()) {
        FockMatrix M = read_matrix_file(a.in);
        n = M.basis.n;
        basis = M.basis;
        cfg["in"] = a.in;
        cfg["n"] = n;
        cfg["cutoff"] = M.basis.cutoff;
        P = std::make_unique<MatrixOperator>(std::move(M));
    } else {
        F = parse_symbol_fn(a.symbol, n);
        cfg["symbol"] = a.symbol;
        cfg["as"] = a.as;
        cfg["n"] = n;
        if (a.as == "weyl")
            P = std::make_unique<WeylSymbolOperator>(*F, q);
        else if (a.as == "aw")
            P = std::make_unique<AWSymbolOperator>(*F, q);
        else
            throw InputError("unknown --as \"" + a.as + "\" (expected weyl or aw)");
    }
    const std::string spec = a.grid.empty() ? default_grid(n) : a.grid;
    const PhaseGrid grid = PhaseGrid::parse(spec, n);
    cfg["grid"] = grid.str();
    if (F) warn_unbounded(*F, grid);

    SymbolGrid out;
    if (a.kind == "weyl") {
        WeylRecoveryOptions o;
        o.nodes = a.nodes;
        out = recover_weyl(*P, grid, o);
        cfg["nodes"] = out.nodes;
        if (basis) warn_trust(*basis, grid, 3.0);
    } else {
        AwRecoveryOptions o;
        o.box_nodes = a.nodes;
        out = recover_aw(*P, grid, o);
        cfg["box_nodes"] = out.box_nodes;
        cfg["radii"] = out.radii;
        if (basis) warn_trust(*basis, grid, 5.0 * std::sqrt(2.0 * n));
    }
    std::ostringstream os;
    write_grid_csv(os, out, cfg);
    emit(a.out, os.str());
    std::size_t div = 0;
    for (const auto& p : out.points) div += p.verdict == Verdict::divergent;
    if (!out.points.empty() && div == out.points.size()) {
        std::cerr << "phasequant: recovery divergent at every grid point\n";
        return kDivergent;
    }
    return kOk;
}

int cmd_verify(const VerifyArgs& a) {
    VerifyConfig c;
    c.n = a.n;
    c.cutoff = a.cutoff;
    c.nodes = a.nodes;
    c.seed = a.seed;
    c.quick = a.quick;
    const VerifyReport r = run_suite(a.suite, c);
    for (const auto& ch : r.checks)
        std::cerr << (ch.pass ? "PASS " : "FAIL ") << ch.name << "  value " << format_double(ch.value) << "  bound "
                  << format_double(ch.bound) << "\n";
    std::ostringstream os;
    write_verify_json(os, r);
    emit(a.report, os.str());
    return r.passed() ? kOk : kCheckFailed;
}

int cmd_beals(const BealsArgs& a) {
    if (a.in.empty() == a.symbol.empty()) throw InputError("give exactly one of --in or --symbol");
    Json cfg;
    cfg["command"] = "beals";
    std::optional<MatrixOperator> A;
    if (!a.in.empty()) {
        A.emplace(read_matrix_file(a.in));
        cfg["in"] = a.in;
    } else {
        const Symbol F = parse_symbol_fn(a.symbol, a.n);
        warn_unbounded(F, PhaseGrid::parse(a.grid, a.n));
        A.emplace(quantize(a.as, F, FockBasis(a.n, a.cutoff), a.nodes));
        cfg["symbol"] = a.symbol;
        cfg["as"] = a.as;
    }
    const FockBasis& b = A->matrix().basis;
    if (b.n != 1) throw InputError("beals supports n = 1 only");
    cfg["n"] = b.n;
    cfg["cutoff"] = b.cutoff;
    const PhaseGrid grid = PhaseGrid::parse(a.grid, b.n);
    BealsOptions o;
    o.box_nodes = a.nodes;
    o.max_order = a.max_order;
    cfg["grid"] = grid.str();
    cfg["radii"] = o.radii;
    warn_trust(b, grid, o.radii.back() * std::sqrt(2.0));
    const BealsReport r = beals_check(*A, grid, o);
    std::ostringstream os;
    write_beals_json(os, r, cfg);
    emit(a.out, os.str());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weyl and anti-Wick quantization, symbol recovery and verification"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    QuantizeArgs qa;
    auto* q = app.add_subcommand("quantize", "quantize a symbol into a truncated Fock matrix (JSON)");
    q->add_option("--kind", qa.kind, "weyl or aw")->check(CLI::IsMember({"weyl", "aw"}))->capture_default_str();
    q->add_option("--symbol", qa.symbol, "symbol expression, see docs/dsl.md")->required();
    q->add_option("--n", qa.n, "degrees of freedom")->check(CLI::Range(1, 2))->capture_default_str();
    q->add_option("--cutoff", qa.cutoff, "Fock cutoff per mode")->check(CLI::Range(2, 512))->capture_default_str();
    q->add_option("--nodes", qa.nodes, "quadrature nodes per axis (0: max(40, 3 cutoff); n = 2: max(20, 3 cutoff))")
        ->check(CLI::Range(0, 4096));
    q->add_option("--out", qa.out, "output file (default stdout)");

    RecoverArgs ra;
    auto* r = app.add_subcommand("recover", "recover a Weyl or anti-Wick symbol on a grid (CSV)");
    r->add_option("--kind", ra.kind, "weyl or aw")->check(CLI::IsMember({"weyl", "aw"}))->capture_default_str();
    auto* rin = r->add_option("--in", ra.in, "matrix JSON written by quantize");
    auto* rsym = r->add_option("--symbol", ra.symbol, "symbol expression defining the operator");
    rin->excludes(rsym);
    r->add_option("--as", ra.as, "quantization applied to --symbol")->check(CLI::IsMember({"weyl", "aw"}))->capture_default_str();
    r->add_option("--n", ra.n, "degrees of freedom for --symbol")->check(CLI::Range(1, 2))->capture_default_str();
    r->add_option("--grid", ra.grid, "lo:hi:count per axis, comma separated (default -2:2:17 per axis)");
    r->add_option("--nodes", ra.nodes, "nodes per axis (0: 40 for n = 1, 20 for n = 2)")->check(CLI::Range(0, 400));
    r->add_option("--out", ra.out, "output CSV (default stdout)");

    VerifyArgs va;
    auto* v = app.add_subcommand("verify", "run invariant checks and write a JSON report");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    v->add_option("--suite", va.suite, "overlaps|roundtrip|decay|heat|commutator|beals|all")
        ->check(CLI::IsMember(suites))
        ->capture_default_str();
    v->add_option("--report", va.report, "report file (default stdout)");
    v->add_option("--n", va.n, "degrees of freedom")->check(CLI::Range(1, 2))->capture_default_str();
    v->add_option("--cutoff", va.cutoff, "Fock cutoff (0: 64 for n = 1, 16 for n = 2)")->check(CLI::Range(0, 512));
    v->add_option("--nodes", va.nodes, "nodes per axis (0: 40 for n = 1, 20 for n = 2)")->check(CLI::Range(0, 400));
    v->add_option("--seed", va.seed, "seed for random point sets")->capture_default_str();
    v->add_flag("--quick", va.quick, "coarse grids and fewer samples");

    BealsArgs ba;
    auto* be = app.add_subcommand("beals", "commutator norms and the Beals integral for an operator (JSON)");
    auto* bin = be->add_option("--in", ba.in, "matrix JSON written by quantize");
    auto* bsym = be->add_option("--symbol", ba.symbol, "symbol expression, quantized first");
    bin->excludes(bsym);
    be->add_option("--as", ba.as, "quantization applied to --symbol")->check(CLI::IsMember({"weyl", "aw"}))->capture_default_str();
    be->add_option("--cutoff", ba.cutoff, "Fock cutoff for --symbol")->check(CLI::Range(2, 512))->capture_default_str();
    be->add_option("--grid", ba.grid, "grid of centres X")->capture_default_str();
    be->add_option("--nodes", ba.nodes, "box nodes per axis (0: 40)")->check(CLI::Range(0, 400));
    be->add_option("--max-order", ba.max_order, "largest |alpha| (default 2n + 1)");
    be->add_option("--out", ba.out, "output JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*q) return cmd_quantize(qa);
        if (*r) return cmd_recover(ra);
        if (*v) return cmd_verify(va);
        if (*be) return cmd_beals(ba);
    } catch (const ParseError& e) {
        std::cerr << "phasequant: " << e.what() << "\n";
        return kInput;
    } catch (const UnknownIdentifier& e) {
        std::cerr << "phasequant: " << e.what() << "\n";
        return kInput;
    } catch (const InputError& e) {
        std::cerr << "phasequant: " << e.what() << "\n";
        return kInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "phasequant: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        std::cerr << "phasequant: numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "phasequant: numeric failure: " << e.what() << "\n";
        return kNumeric;
    }
    return kOk;
}
