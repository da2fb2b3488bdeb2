#pragma once

#include "phasequant/commutators.hpp"
#include "phasequant/fock.hpp"
#include "phasequant/recovery.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace phq {

using Json = nlohmann::ordered_json;

const char* version();

// %.17g; non-finite values print as nan, inf, -inf.
std::string format_double(double v);

// Indented JSON with doubles at 17 significant digits (non-finite as null).
std::string dump_json(const Json& j);

// {"n", "cutoff", "ordering": "row-major", "data": [[re, im], ...]} plus version and config.
void write_matrix_json(std::ostream& os, const FockMatrix& M, const Json& config);
FockMatrix read_matrix_json(std::istream& is);
FockMatrix read_matrix_file(const std::string& path);

// '#' lines with version and config, then the header and one row per grid point.
void write_grid_csv(std::ostream& os, const SymbolGrid& g, const Json& config);

struct Check {
    std::string name;
    std::string ref; // what the check exercises, in words
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::string suite;
    Json config = Json::object();
    std::vector<Check> checks;
    bool passed() const;
};

void write_verify_json(std::ostream& os, const VerifyReport& r);

// {grid, lhs_per_X, commutator_norms: {alpha: value}, ratio} plus version and config.
void write_beals_json(std::ostream& os, const BealsReport& r, const Json& config);

} // namespace phq
