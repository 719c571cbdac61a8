#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "gammalab/operators.hpp"

namespace gammalab {

// Brute-force GF(2) submodule lattice for micro instances. Deliberately a
// separate bitmask implementation so the oracle shares no code with the
// certificate side it cross-checks.
//
// A subspace is a reduced echelon basis of row masks (lowest set bit is the
// pivot, fully back-reduced, sorted ascending); equal subspaces have equal
// representations.
namespace oracle {

using Mask = std::uint32_t;
using BitBasis = std::vector<Mask>;

BitBasis echelon(std::vector<Mask> vecs);
bool contains(Mask v, const BitBasis& basis);
BitBasis join(const BitBasis& a, const BitBasis& b);
BitBasis meet(const BitBasis& a, const BitBasis& b);

// Closure of one vector under the generator image maps.
BitBasis cyclic_closure(Mask v, const std::vector<IndexMap>& maps, int n);

struct MicroLattice {
    int ambient = 0;
    std::vector<BitBasis> elems;  // sorted; includes the zero subspace
    std::size_t cyclic_count = 0;

    bool has(const BitBasis& b) const;
};

// All submodules: cyclic closures of every nonzero vector, then closure
// under pairwise joins (every submodule is the join of its cyclic ones).
// Requires prime = 2 and |Y| <= caps.max_oracle_dim.
MicroLattice enumerate_lattice(const YSet& y);

// True when some X in the lattice has W meet X = V and W join X = U.
// Requires 0 != V < W <= U with all three in the lattice.
bool oracle_complemented(const MicroLattice& lat, const BitBasis& v, const BitBasis& w,
                         const BitBasis& u);

// The chain element L_alpha as a bit basis.
BitBasis subspace_l_mask(const YSet& y, int alpha);

}  // namespace oracle

}  // namespace gammalab
