#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gammalab/index.hpp"
#include "gammalab/linalg.hpp"

namespace gammalab {

// A generator T mapping the cone above nu into the cone above rho, admissible
// when amax(rho) >= bmax(nu) (the star condition).
struct GeneratorSymbol {
    Index nu;
    Index rho;

    static GeneratorSymbol make(Index nu, Index rho) {
        if (rho.amax() < nu.bmax())
            throw InvalidIndexError("generator " + format(nu, rho) +
                                    " violates amax(rho) >= bmax(nu)");
        return GeneratorSymbol{std::move(nu), std::move(rho)};
    }

    static std::string format(const Index& nu, const Index& rho) {
        return "T[" + nu.str() + "->" + rho.str() + "]";
    }
    std::string str() const { return format(nu, rho); }

    // "T[0,1->2,3]"
    static GeneratorSymbol parse(const std::string& text, const Instance& inst);

    bool operator==(const GeneratorSymbol&) const = default;
    auto operator<=>(const GeneratorSymbol&) const = default;
};

// The three-case induction defining the action on basis vectors: nullopt when
// nu is not an initial segment of eta (the zero image), rho when eta = nu,
// otherwise peel the last pair of eta and absorb or append it.
std::optional<Index> apply_generator(const GeneratorSymbol& t, const Index& eta,
                                     const Instance& inst);

// All admissible pairs from enumerate_y, in canonical order.
std::vector<GeneratorSymbol> enumerate_generators(const Instance& inst);

// Row eta -> column position of the image, -1 for the zero image. The compact
// form of the generator's matrix; one entry per basis vector.
struct IndexMap {
    std::vector<int> img;

    int size() const { return static_cast<int>(img.size()); }
};

IndexMap index_map(const GeneratorSymbol& t, const YSet& y);

// Image maps for every generator of the instance, in canonical generator order.
std::vector<IndexMap> generator_maps(const YSet& y);

// v -> v * M_t without materializing the matrix.
template <class F>
Vec<F> apply_map(F field, const Vec<F>& v, const IndexMap& m) {
    Vec<F> out(v.size(), field.zero());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (field.is_zero(v[i])) continue;
        int j = m.img[i];
        if (j >= 0) out[std::size_t(j)] = field.add(out[std::size_t(j)], v[i]);
    }
    return out;
}

// The |Y| x |Y| matrix of the generator: row eta carries a single 1 in the
// image column, or is zero. Operators act on the right of row vectors.
template <class F>
Mat<F> generator_matrix(const GeneratorSymbol& t, const YSet& y, F field) {
    IndexMap m = index_map(t, y);
    Mat<F> M(field, y.size(), y.size());
    for (int i = 0; i < y.size(); ++i)
        if (m.img[std::size_t(i)] >= 0) M.at(i, m.img[std::size_t(i)]) = field.one();
    return M;
}

// L_alpha: the coordinate subspace spanned by basis vectors with amax >= alpha.
template <class F>
Subspace<F> subspace_L(const YSet& y, int alpha, F field) {
    if (alpha < 0 || alpha >= y.instance().n)
        throw PreconditionError("subspace_L: alpha out of range");
    std::vector<Vec<F>> rows;
    for (int i : y.slice(alpha, std::nullopt)) {
        Vec<F> v(std::size_t(y.size()), field.zero());
        v[std::size_t(i)] = field.one();
        rows.push_back(std::move(v));
    }
    return rref(field, rows, y.size());
}

// L_{alpha beta} = span{ x_eta - x_{eta^(alpha,beta)} : amax(eta) < alpha } + L_beta,
// for alpha in s and alpha < beta < n.
template <class F>
Subspace<F> subspace_Lab(const YSet& y, int alpha, int beta, F field) {
    const Instance& inst = y.instance();
    if (!(inst.s_contains(alpha) && alpha < beta && beta < inst.n))
        throw PreconditionError("subspace_Lab: need alpha in s and alpha < beta < n");
    std::vector<Vec<F>> rows;
    for (int i = 0; i < y.size(); ++i) {
        const Index& eta = y.at(i);
        if (eta.amax() >= alpha) continue;
        OrdPair extra{alpha, beta};
        Index ext = concat(eta, std::span<const OrdPair>(&extra, 1), inst);
        int j = y.find(ext);
        if (j < 0) throw InternalError("subspace_Lab: extension missing from Y");
        Vec<F> v(std::size_t(y.size()), field.zero());
        v[std::size_t(i)] = field.one();
        v[std::size_t(j)] = field.neg(field.one());
        rows.push_back(std::move(v));
    }
    for (int i : y.slice(beta, std::nullopt)) {
        Vec<F> v(std::size_t(y.size()), field.zero());
        v[std::size_t(i)] = field.one();
        rows.push_back(std::move(v));
    }
    return rref(field, rows, y.size());
}

// Membership in L_alpha needs no elimination: L_alpha is a coordinate subspace.
template <class F>
bool in_subspace_L(F field, const Vec<F>& v, const YSet& y, int alpha) {
    for (int i = 0; i < y.size(); ++i)
        if (!field.is_zero(v[std::size_t(i)]) && y.at(i).amax() < alpha) return false;
    return true;
}

}  // namespace gammalab
