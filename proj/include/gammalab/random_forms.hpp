#pragma once

#include "gammalab/rewrite.hpp"

namespace gammalab {

// Seeded samplers shared by the randomized checks and the tests.

template <class F>
Vec<F> random_nonzero_vector(Rng& rng, const YSet& y, F field, int max_support = 3) {
    Vec<F> v(std::size_t(y.size()), field.zero());
    bool nonzero = false;
    while (!nonzero) {
        int k = static_cast<int>(rng.between(1, max_support));
        for (int t = 0; t < k; ++t) {
            auto c = field.from_int(rng.between(1, 4));
            if (!field.is_zero(c)) {
                v[rng.below(std::uint64_t(y.size()))] = c;
                nonzero = true;
            }
        }
    }
    return v;
}

// Uniform factors, arbitrary adjacency: the raw material for normalize().
inline std::vector<GeneratorSymbol> random_product(Rng& rng,
                                                   const std::vector<GeneratorSymbol>& gens,
                                                   int max_len) {
    int len = static_cast<int>(rng.between(1, max_len));
    std::vector<GeneratorSymbol> out;
    for (int i = 0; i < len; ++i) out.push_back(rng.pick(gens));
    return out;
}

// A canonical form built directly from irredundant products: the first factor
// is uniform, later factors extend the previous rho by a nonempty tail.
template <class F>
CanonicalForm<F> random_canonical_form(Rng& rng, const YSet& y,
                                       const std::vector<GeneratorSymbol>& gens, F field,
                                       bool allow_unit) {
    CanonicalForm<F> out(field);
    if (allow_unit && rng.below(2) == 0) out.unit = field.from_int(rng.between(0, 4));
    int terms = static_cast<int>(rng.between(1, 3));
    for (int t = 0; t < terms; ++t) {
        std::vector<GeneratorSymbol> factors{rng.pick(gens)};
        int want = static_cast<int>(rng.between(1, 3));
        while (static_cast<int>(factors.size()) < want) {
            const Index& rho = factors.back().rho;
            std::vector<GeneratorSymbol> next;
            for (const Index& nu2 : y.elems()) {
                if (nu2.size() <= rho.size()) continue;
                if (!initial_segment(rho, nu2)) continue;
                for (const Index& rho2 : y.elems())
                    if (rho2.amax() >= nu2.bmax())
                        next.push_back(GeneratorSymbol{nu2, rho2});
            }
            if (next.empty()) break;
            factors.push_back(rng.pick(next));
        }
        auto coeff = field.from_int(rng.between(1, 4));
        IrredundantProduct prod{std::move(factors)};
        auto [it, fresh] = out.terms.emplace(std::move(prod), coeff);
        if (!fresh) it->second = field.add(it->second, coeff);
    }
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = field.is_zero(it->second) ? out.terms.erase(it) : std::next(it);
    return out;
}

}  // namespace gammalab
