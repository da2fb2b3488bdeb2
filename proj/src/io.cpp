#include "phasequant/io.hpp"

#include "phasequant/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace phq {

namespace {

void dump_into(const Json& j, std::string& out, int indent) {
    const std::string pad(indent * 2, ' ');
    const std::string inner((indent + 1) * 2, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + Json(it.key()).dump() + ": ";
            dump_into(it.value(), out, indent + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool flat = true;
        for (const auto& e : j)
            if (e.is_structured()) flat = false;
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump_into(j[i], out, indent + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            dump_into(j[i], out, indent + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_double(v) : "null";
        return;
    }
    default: out += j.dump();
    }
}

[[noreturn]] void bad_matrix(const std::string& why) { throw InputError("malformed matrix JSON: " + why); }

} // namespace

const char* version() { return PHQ_VERSION; }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string dump_json(const Json& j) {
    std::string out;
    dump_into(j, out, 0);
    out += "\n";
    return out;
}

void write_matrix_json(std::ostream& os, const FockMatrix& M, const Json& config) {
    const Eigen::Index D = M.basis.dim();
    if (M.data.rows() != D || M.data.cols() != D) throw InvalidArgument("matrix shape does not match its basis");
    os << "{\n  \"version\": " << Json(version()).dump() << ",\n  \"config\": ";
    std::string cfg;
    dump_into(config, cfg, 1);
    os << cfg << ",\n  \"n\": " << M.basis.n << ",\n  \"cutoff\": " << M.basis.cutoff
       << ",\n  \"ordering\": \"row-major\",\n  \"data\": [";
    for (Eigen::Index j = 0; j < D; ++j)
        for (Eigen::Index k = 0; k < D; ++k) {
            const cplx v = M.data(j, k);
            os << (j == 0 && k == 0 ? "\n    [" : ",\n    [") << format_double(v.real()) << ", "
               << format_double(v.imag()) << "]";
        }
    os << "\n  ]\n}\n";
}

FockMatrix read_matrix_json(std::istream& is) {
    Json j;
    try {
        j = Json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed matrix JSON: ") + e.what());
    }
    if (!j.is_object()) bad_matrix("top level is not an object");
    for (const char* key : {"n", "cutoff", "ordering", "data"})
        if (!j.contains(key)) bad_matrix(std::string("missing key \"") + key + "\"");
    if (!j["n"].is_number_integer() || !j["cutoff"].is_number_integer()) bad_matrix("n and cutoff must be integers");
    const int n = j["n"].get<int>();
    const int cutoff = j["cutoff"].get<int>();
    if (n != 1 && n != 2) bad_matrix("n must be 1 or 2");
    if (cutoff < 2 || cutoff > 4096) bad_matrix("cutoff out of range");
    if (j["ordering"] != "row-major") bad_matrix("ordering must be \"row-major\"");
    const FockBasis basis(n, cutoff);
    const auto D = static_cast<std::size_t>(basis.dim());
    const Json& data = j["data"];
    if (!data.is_array() || data.size() != D * D)
        bad_matrix("data must hold " + std::to_string(D * D) + " entries");
    Eigen::MatrixXcd M(basis.dim(), basis.dim());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Json& e = data[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            bad_matrix("entry " + std::to_string(i) + " is not [re, im]");
        M(static_cast<Eigen::Index>(i / D), static_cast<Eigen::Index>(i % D)) = cplx(e[0].get<double>(), e[1].get<double>());
    }
    return {basis, M};
}

FockMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_matrix_json(in);
}

void write_grid_csv(std::ostream& os, const SymbolGrid& g, const Json& config) {
    const int n = g.grid.n();
    os << "# phasequant " << version() << "\n";
    os << "# provenance: " << grid_provenance_name(g.provenance) << "\n";
    os << "# config: " << config.dump() << "\n";
    os << (n == 1 ? "x,xi" : "x1,x2,xi1,xi2") << ",re,im,verdict\n";
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
        const PhasePoint X = g.grid.point(i);
        for (int a = 0; a < X.dim(); ++a) os << format_double(X[a]) << ",";
        const Verdict v = i < g.points.size() ? g.points[i].verdict : Verdict::converged;
        os << format_double(g.values[i].real()) << "," << format_double(g.values[i].imag()) << "," << verdict_name(v)
           << "\n";
    }
}

bool VerifyReport::passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void write_verify_json(std::ostream& os, const VerifyReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["version"] = version();
    j["config"] = r.config;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["paper_ref"] = c.ref;
        e["value"] = c.value;
        e["bound"] = c.bound;
        e["pass"] = c.pass;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["pass"] = r.passed();
    os << dump_json(j);
}

void write_beals_json(std::ostream& os, const BealsReport& r, const Json& config) {
    Json j;
    j["version"] = version();
    j["config"] = config;
    j["grid"] = r.grid.str();
    Json lhs = Json::array();
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
        Json e;
        e["X"] = r.grid.point(i).to_vector();
        e["lhs"] = r.lhs[i];
        e["verdict"] = verdict_name(r.verdicts[i]);
        lhs.push_back(e);
    }
    j["lhs_per_X"] = lhs;
    Json norms = Json::object();
    for (const auto& [alpha, v] : r.norms) norms[multi_index_str(alpha)] = v;
    j["commutator_norms"] = norms;
    j["rhs_sum"] = r.rhs_sum;
    j["lhs_sup"] = r.lhs_sup;
    j["ratio"] = r.ratio;
    os << dump_json(j);
}

} // namespace phq
