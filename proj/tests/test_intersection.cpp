#include <catch2/catch_amalgamated.hpp>

#include <strata/strata.hpp>

#include "oracle.hpp"

using strata::BettiTable;
using strata::Code;
using strata::Perversity;
using strata::StratifiedSpace;

namespace {

BettiTable table(std::initializer_list<long long> vals)
{
    BettiTable b;
    int d = 0;
    for (long long v : vals)
        b.set(d++, v);
    return b;
}

BettiTable truncated(const BettiTable& full, int top)
{
    BettiTable b;
    for (int d = 0; d <= full.top_degree() && d <= top; ++d)
        b.set(d, full.at(d));
    return b;
}

}  // namespace

TEST_CASE("cone over the octahedron interpolates between point and sphere")
{
    StratifiedSpace cone = strata::cone_stratified(strata::octahedron());
    BettiTable sphere = strata::homology_betti(strata::octahedron());
    REQUIRE(sphere == table({1, 0, 1}));

    for (int k = -2; k <= 3; ++k) {
        Perversity q = Perversity::constant(cone, k);
        CHECK(strata::ih_betti(cone, q) == truncated(sphere, k));
    }
}

TEST_CASE("cone over a circle interpolates between point and circle")
{
    StratifiedSpace cone = strata::cone_stratified(strata::cycle_complex(4));
    BettiTable circle = strata::homology_betti(strata::cycle_complex(4));
    REQUIRE(circle == table({1, 1}));

    // t = codim - 2 = 0 here, so the interesting window is tiny.
    CHECK(strata::ih_betti(cone, Perversity::constant(cone, -1)) == BettiTable{});
    CHECK(strata::ih_betti(cone, Perversity::constant(cone, 0)) == table({1}));
    CHECK(strata::ih_betti(cone, Perversity::constant(cone, 1)) == table({1, 1}));
    CHECK(strata::ih_betti(cone, Perversity::constant(cone, 2)) == table({1, 1}));
}

TEST_CASE("extreme perversities collapse to relative and regular homology")
{
    StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
    BettiTable rel = strata::relative_betti(susp);
    CHECK(rel == table({0, 1, 0, 1}));
    CHECK(strata::ih_betti(susp, Perversity::constant(susp, -1)) == rel);
    CHECK(strata::ih_betti(susp, Perversity::constant(susp, -5)) == rel);

    BettiTable reg = strata::regular_part_betti(susp);
    CHECK(reg == table({1, 0, 1}));  // open suspension minus poles ~ octahedron
    CHECK(strata::ih_betti(susp, Perversity::constant(susp, 2)) == reg);
    CHECK(strata::ih_betti(susp, Perversity::constant(susp, 6)) == reg);

    StratifiedSpace cone = strata::cone_stratified(strata::octahedron());
    CHECK(strata::regular_part_betti(cone) == table({1, 0, 1}));
    CHECK(strata::ih_betti(cone, Perversity::constant(cone, 2))
          == strata::regular_part_betti(cone));
    CHECK(strata::relative_betti(cone) == BettiTable{});
}

TEST_CASE("computed tables match the dense reference implementation")
{
    std::vector<StratifiedSpace> spaces = {
        strata::cone_stratified(strata::cycle_complex(4)),
        strata::cone_stratified(strata::octahedron()),
        strata::suspension_stratified(strata::octahedron()),
    };
    for (const StratifiedSpace& sp : spaces) {
        int t = 0;
        for (const strata::Stratum* s : sp.singular_strata())
            t = std::max(t, sp.codim(*s) - 2);
        for (int k = -2; k <= t + 2; ++k) {
            Perversity q = Perversity::constant(sp, k);
            INFO("constant perversity " << k);
            CHECK(strata::ih_betti(sp, q) == oracle::ih_betti(sp, q));
        }
    }

    SECTION("a non-constant perversity on the suspension")
    {
        StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
        Perversity q = Perversity::from_values(susp, {{"S0_0", 0}, {"S0_1", 1}});
        CHECK(strata::ih_betti(susp, q) == oracle::ih_betti(susp, q));
    }
}

TEST_CASE("allowable complexes grow with the chain perversity")
{
    StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
    strata::RelativeChains chains(susp);
    Perversity tbar = Perversity::top(susp);

    std::vector<std::pair<Perversity, Perversity>> nested = {
        {Perversity::constant(susp, -1), Perversity::zero(susp)},
        {Perversity::zero(susp), tbar},
        {Perversity::from_values(susp, {{"S0_0", 0}, {"S0_1", 1}}),
         Perversity::from_values(susp, {{"S0_0", 2}, {"S0_1", 1}})},
        {tbar, tbar.shifted(3)},
    };
    for (const auto& [lo, hi] : nested) {
        REQUIRE(leq(lo, hi));
        strata::AllowableComplex small(chains, lo);
        strata::AllowableComplex big(chains, hi);
        for (int d = 0; d <= susp.dim(); ++d)
            CHECK(small.allowable_count(d) <= big.allowable_count(d));
    }
}

TEST_CASE("the allowable complex reports consistent ranks")
{
    StratifiedSpace cone = strata::cone_stratified(strata::octahedron());
    strata::RelativeChains chains(cone);
    for (int k = 0; k <= 2; ++k) {
        strata::AllowableComplex ac(chains, strata::complementary(cone, Perversity::constant(cone, k)));
        for (int d = 0; d <= cone.dim(); ++d) {
            CHECK(ac.rank_excluded(d) <= ac.rank_full(d));
            CHECK(ac.rank_full(d) <= ac.allowable_count(d));
        }
        CHECK(ac.betti() == strata::ih_betti(cone, Perversity::constant(cone, k)));
    }
}

TEST_CASE("perversity steps")
{
    StratifiedSpace cone = strata::cone_stratified(strata::octahedron());
    Perversity q0 = Perversity::zero(cone);
    Perversity q2 = Perversity::constant(cone, 2);

    CHECK(strata::step_ih_betti(cone, q0, q2) == table({0, 0, 1}));
    CHECK(strata::step_ih_betti(cone, q0, q0) == BettiTable{});
    CHECK_THROWS_MATCHES(strata::step_ih_betti(cone, q2, q0), strata::StrataError,
                         Catch::Matchers::Predicate<strata::StrataError>(
                             [](const strata::StrataError& e) {
                                 return e.code() == Code::NOT_NESTED;
                             }));

    SECTION("Euler characteristic of a step is the difference of the endpoints")
    {
        std::vector<StratifiedSpace> spaces = {
            cone,
            strata::suspension_stratified(strata::octahedron()),
        };
        for (const StratifiedSpace& sp : spaces) {
            for (int lo = -1; lo <= 2; ++lo)
                for (int hi = lo; hi <= 3; ++hi) {
                    Perversity ql = Perversity::constant(sp, lo);
                    Perversity qh = Perversity::constant(sp, hi);
                    BettiTable st = strata::step_ih_betti(sp, ql, qh);
                    CHECK(st.euler()
                          == strata::ih_betti(sp, qh).euler() - strata::ih_betti(sp, ql).euler());
                }
        }
    }
}

TEST_CASE("intersection homology of an unstratified manifold is its homology")
{
    StratifiedSpace flat = strata::trivial_stratification(strata::octahedron());
    for (int k = -2; k <= 2; ++k)
        CHECK(strata::ih_betti(flat, Perversity::constant(flat, k))
              == strata::homology_betti(flat.complex));
}
