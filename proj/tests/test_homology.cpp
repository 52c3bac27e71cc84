#include <catch2/catch_amalgamated.hpp>

#include <strata/strata.hpp>

#include "oracle.hpp"

using strata::BettiTable;
using strata::SimplicialComplex;

namespace {

BettiTable table(std::initializer_list<long long> entries)
{
    BettiTable t;
    int i = 0;
    for (long long v : entries)
        t.set(i++, v);
    return t;
}

}  // namespace

TEST_CASE("betti numbers of the standard fixtures")
{
    CHECK(strata::homology_betti(strata::octahedron()) == table({1, 0, 1}));
    CHECK(strata::homology_betti(strata::cycle_complex(4)) == table({1, 1}));
    CHECK(strata::homology_betti(strata::sphere_complex(2)) == table({1, 0, 1}));
    CHECK(strata::homology_betti(strata::simplex_complex(3)) == table({1}));
    CHECK(strata::homology_betti(SimplicialComplex()) == table({}));
}

TEST_CASE("betti numbers of disjoint unions add")
{
    SimplicialComplex two_circles = SimplicialComplex::from_simplices(
        {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    CHECK(strata::homology_betti(two_circles) == table({2, 2}));

    SimplicialComplex point_and_sphere = SimplicialComplex::from_simplices(
        {{9}, {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(strata::homology_betti(point_and_sphere) == table({2, 0, 1}));
}

TEST_CASE("homology agrees with the dense oracle on every fixture")
{
    std::vector<SimplicialComplex> fixtures = {
        strata::octahedron(),
        strata::cycle_complex(5),
        strata::suspension(strata::octahedron()),
        strata::hopf_total_complex(),
        strata::cone(strata::suspension(strata::cycle_complex(4))),
        strata::product(strata::cycle_complex(4), strata::cycle_complex(4)),
        strata::sphere_complex(3),
    };
    for (const auto& k : fixtures)
        CHECK(strata::homology_betti(k) == oracle::homology_betti(k));
}

TEST_CASE("euler characteristic equals the alternating betti sum")
{
    for (const SimplicialComplex& k :
         {strata::octahedron(), strata::hopf_total_complex(),
          strata::product(strata::octahedron(), strata::cycle_complex(4))})
        CHECK(strata::homology_betti(k).euler() == k.euler_characteristic());
}
