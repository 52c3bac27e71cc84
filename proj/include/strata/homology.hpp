/**
 * Simplicial homology over the rationals, reported as graded dimensions.
 */
#pragma once

#include <vector>

#include "strata/complex.hpp"
#include "strata/core.hpp"
#include "strata/rank.hpp"

namespace strata {

/** Betti numbers of the complex: dim C_d minus the two boundary ranks. */
inline BettiTable homology_betti(const SimplicialComplex& k)
{
    BettiTable b;
    if (k.empty())
        return b;
    int n = k.dim();
    std::vector<long long> rank(static_cast<size_t>(n) + 2, 0);
    for (int d = 1; d <= n; ++d)
        rank[static_cast<size_t>(d)] = sparse_rank(k.boundary_matrix(d));
    for (int d = 0; d <= n; ++d)
        b.set(d, k.cell_count(d) - rank[static_cast<size_t>(d)] - rank[static_cast<size_t>(d) + 1]);
    return b;
}

}  // namespace strata
