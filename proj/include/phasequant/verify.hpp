#pragma once

#include "phasequant/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace phq {

struct VerifyConfig {
    int n = 1;
    int cutoff = 0; // 0: 64 for n = 1, 16 for n = 2
    int nodes = 0; // 0: 40 for n = 1, 20 for n = 2
    std::uint64_t seed = 1;
    bool quick = false; // coarse grids and fewer samples
};

// Defaults resolved.
VerifyConfig resolved(VerifyConfig c);
Json config_json(const VerifyConfig& c);

const std::vector<std::string>& suite_names(); // without "all"

// Throws InvalidArgument for an unknown suite or a suite that needs n = 1.
VerifyReport run_suite(const std::string& suite, const VerifyConfig& c);

// Seeded points with |X| <= radius, rejection-sampled from the box.
std::vector<PhasePoint> random_points(int n, std::size_t count, double radius, std::uint64_t seed);

} // namespace phq
