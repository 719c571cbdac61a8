#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gammalab/common.hpp"

namespace gammalab {

struct OracleCaps {
    int max_oracle_dim = 12;  // largest |Y| the brute-force lattice oracle accepts
    std::uint64_t seed = 1;   // seed for all randomized checks
};

// Truncation parameters: a bound n standing for the index cardinal, the
// parameter set s with 0 in s, and the field characteristic (0 = rationals).
struct Instance {
    int n = 0;
    std::vector<int> s;     // sorted, deduplicated by validate()
    std::uint32_t prime = 5;
    OracleCaps caps;

    void validate();
    bool s_contains(int a) const;

    static Instance make(int n, std::vector<int> s, std::uint32_t prime,
                         OracleCaps caps = {});

    bool operator==(const Instance&) const = default;
};

// Comma-separated list, e.g. "0,2,4".
std::vector<int> parse_int_list(const std::string& text);
std::string format_int_list(const std::vector<int>& xs);

bool is_prime(std::uint32_t p);

}  // namespace gammalab
