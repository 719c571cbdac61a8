#include "gammalab/instance.hpp"

#include <algorithm>
#include <sstream>

namespace gammalab {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void Instance::validate() {
    if (n < 2) throw ConfigError("instance: n must be >= 2, got " + std::to_string(n));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty() || s.front() != 0)
        throw ConfigError("instance: s must contain 0");
    for (int a : s)
        if (a < 0 || a >= n)
            throw ConfigError("instance: s must be a subset of [0, n); offending element " +
                              std::to_string(a));
    if (prime != 0) {
        if (!is_prime(prime))
            throw ConfigError("instance: prime must be 0 (rationals) or a prime, got " +
                              std::to_string(prime));
        if (prime >= (1u << 16))
            throw ConfigError("instance: prime must be below 2^16");
    }
    if (caps.max_oracle_dim < 1)
        throw ConfigError("instance: max oracle dimension must be positive");
}

bool Instance::s_contains(int a) const {
    return std::binary_search(s.begin(), s.end(), a);
}

Instance Instance::make(int n, std::vector<int> s, std::uint32_t prime, OracleCaps caps) {
    Instance inst{n, std::move(s), prime, caps};
    inst.validate();
    return inst;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("not an integer list: '" + text + "'");
        }
    }
    return out;
}

std::string format_int_list(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace gammalab
