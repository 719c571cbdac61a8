#include "gammalab/oracle.hpp"

#include <algorithm>

namespace gammalab::oracle {

BitBasis echelon(std::vector<Mask> vecs) {
    BitBasis basis;
    for (Mask v : vecs) {
        for (Mask b : basis) {
            Mask p = b & (~b + 1);
            if (v & p) v ^= b;
        }
        if (!v) continue;
        Mask p = v & (~v + 1);
        for (Mask& b : basis)
            if (b & p) b ^= v;
        basis.push_back(v);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

bool contains(Mask v, const BitBasis& basis) {
    for (Mask b : basis) {
        Mask p = b & (~b + 1);
        if (v & p) v ^= b;
    }
    return v == 0;
}

BitBasis join(const BitBasis& a, const BitBasis& b) {
    std::vector<Mask> all(a);
    all.insert(all.end(), b.begin(), b.end());
    return echelon(std::move(all));
}

// Zassenhaus on doubled masks. The eliminated block sits in the low bits
// (where the lowest-set-bit pivoting works first): rows [x | x] for a and
// [0 | x] for b; once the low half of a row cancels, its high half is a
// vector lying in both spans.
BitBasis meet(const BitBasis& a, const BitBasis& b) {
    constexpr int kShift = 16;  // ambient <= 12 < 16
    std::vector<std::uint64_t> rows;
    for (Mask x : a) rows.push_back((std::uint64_t(x) << kShift) | x);
    for (Mask x : b) rows.push_back(std::uint64_t(x));
    std::vector<std::uint64_t> basis;
    for (std::uint64_t v : rows) {
        for (std::uint64_t r : basis) {
            std::uint64_t p = r & (~r + 1);
            if (v & p) v ^= r;
        }
        if (v) basis.push_back(v);
    }
    constexpr std::uint64_t kLow = (1u << kShift) - 1;
    std::vector<Mask> high;
    for (std::uint64_t r : basis)
        if ((r & kLow) == 0) high.push_back(static_cast<Mask>(r >> kShift));
    return echelon(std::move(high));
}

BitBasis cyclic_closure(Mask v, const std::vector<IndexMap>& maps, int n) {
    BitBasis basis;
    std::vector<Mask> work{v};
    while (!work.empty()) {
        Mask x = work.back();
        work.pop_back();
        if (contains(x, basis)) continue;
        {
            std::vector<Mask> all(basis);
            all.push_back(x);
            basis = echelon(std::move(all));
        }
        for (const IndexMap& m : maps) {
            Mask w = 0;
            for (int i = 0; i < n; ++i)
                if ((x >> i) & 1 && m.img[std::size_t(i)] >= 0)
                    w ^= Mask(1) << m.img[std::size_t(i)];
            if (w) work.push_back(w);
        }
    }
    return basis;
}

bool MicroLattice::has(const BitBasis& b) const {
    return std::binary_search(elems.begin(), elems.end(), b);
}

MicroLattice enumerate_lattice(const YSet& y) {
    const Instance& inst = y.instance();
    if (inst.prime != 2)
        throw PreconditionError("enumerate_lattice: oracle requires prime = 2");
    if (y.size() > inst.caps.max_oracle_dim)
        throw PreconditionError("enumerate_lattice: |Y| = " + std::to_string(y.size()) +
                                " exceeds the oracle cap " +
                                std::to_string(inst.caps.max_oracle_dim));
    int n = y.size();
    std::vector<IndexMap> maps = generator_maps(y);

    std::set<BitBasis> cyclic;
    for (Mask v = 1; v < (Mask(1) << n); ++v)
        cyclic.insert(cyclic_closure(v, maps, n));

    std::set<BitBasis> lat;
    lat.insert(BitBasis{});
    for (const BitBasis& c : cyclic) lat.insert(c);
    std::vector<BitBasis> work(lat.begin(), lat.end());
    while (!work.empty()) {
        std::vector<BitBasis> next;
        for (const BitBasis& b : work)
            for (const BitBasis& c : cyclic) {
                BitBasis j = join(b, c);
                if (lat.insert(j).second) next.push_back(std::move(j));
            }
        work = std::move(next);
    }

    MicroLattice out;
    out.ambient = n;
    out.cyclic_count = cyclic.size();
    out.elems.assign(lat.begin(), lat.end());
    return out;
}

bool oracle_complemented(const MicroLattice& lat, const BitBasis& v, const BitBasis& w,
                         const BitBasis& u) {
    if (v.empty() || v == w)
        throw PreconditionError("oracle_complemented: need 0 != V < W");
    for (Mask x : v)
        if (!contains(x, w)) throw PreconditionError("oracle_complemented: V must lie in W");
    for (Mask x : w)
        if (!contains(x, u)) throw PreconditionError("oracle_complemented: W must lie in U");
    if (!lat.has(v) || !lat.has(w) || !lat.has(u))
        throw PreconditionError("oracle_complemented: arguments must be lattice members");
    for (const BitBasis& x : lat.elems)
        if (meet(w, x) == v && join(w, x) == u) return true;
    return false;
}

BitBasis subspace_l_mask(const YSet& y, int alpha) {
    std::vector<Mask> vecs;
    for (int i : y.slice(alpha, std::nullopt)) vecs.push_back(Mask(1) << i);
    return echelon(std::move(vecs));
}

}  // namespace gammalab::oracle
