#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include <strata/strata.hpp>

using strata::Code;
using strata::Perversity;
using strata::StratifiedSpace;

namespace {

bool throws_code(Code want, const std::function<void()>& f)
{
    try {
        f();
    } catch (const strata::StrataError& e) {
        return e.code() == want;
    }
    return false;
}

}  // namespace

TEST_CASE("named perversities on a cone")
{
    StratifiedSpace cone = strata::cone_stratified(strata::octahedron());
    CHECK(strata::named_perversity(cone, "top").at("S0_0") == 1);  // codim 3
    CHECK(strata::named_perversity(cone, "zero").at("S0_0") == 0);
    CHECK(strata::named_perversity(cone, "constant", -1).at("S0_0") == -1);
    CHECK(throws_code(Code::BAD_INPUT, [&] { strata::named_perversity(cone, "middle"); }));
}

TEST_CASE("explicit values must cover the singular strata exactly")
{
    StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
    Perversity p = Perversity::from_values(susp, {{"S0_0", 3}, {"S0_1", 0}});
    CHECK(p.at("S0_0") == 3);
    CHECK(p.at("S0_1") == 0);
    CHECK(throws_code(Code::SPACE_MISMATCH,
                      [&] { Perversity::from_values(susp, {{"S0_0", 3}}); }));
    CHECK(throws_code(Code::SPACE_MISMATCH, [&] {
        Perversity::from_values(susp, {{"S0_0", 3}, {"S0_1", 0}, {"S3_0", 0}});
    }));
    CHECK(throws_code(Code::SPACE_MISMATCH, [&] { p.at("S9_9"); }));
}

TEST_CASE("pointwise arithmetic and combination")
{
    StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
    Perversity p = Perversity::from_values(susp, {{"S0_0", 3}, {"S0_1", 0}});
    Perversity q = Perversity::from_values(susp, {{"S0_0", 1}, {"S0_1", 2}});

    CHECK((p + q) == Perversity::from_values(susp, {{"S0_0", 4}, {"S0_1", 2}}));
    CHECK((p - q).at("S0_1") == -2);
    CHECK(perversity_combine(p, q, "add") == p + q);
    CHECK(perversity_combine(p, q, "sub") == p - q);
    CHECK(perversity_combine(p, q, "min") == Perversity::from_values(susp, {{"S0_0", 1}, {"S0_1", 0}}));
    CHECK(perversity_combine(p, q, "max") == Perversity::from_values(susp, {{"S0_0", 3}, {"S0_1", 2}}));
    CHECK(throws_code(Code::BAD_INPUT, [&] { perversity_combine(p, q, "xor"); }));

    SECTION("shift moves every entry")
    {
        Perversity s = p.shifted(-1);
        CHECK(s.at("S0_0") == 2);
        CHECK(s.at("S0_1") == -1);
    }
}

TEST_CASE("arithmetic across different stratum sets is rejected")
{
    StratifiedSpace cone = strata::cone_stratified(strata::octahedron());
    StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
    Perversity a = Perversity::top(cone);
    Perversity b = Perversity::top(susp);
    CHECK(throws_code(Code::SPACE_MISMATCH, [&] { (void)(a + b); }));
    CHECK(throws_code(Code::SPACE_MISMATCH, [&] { perversity_combine(a, b, "min"); }));
    CHECK(throws_code(Code::SPACE_MISMATCH, [&] { leq(a, b); }));
}

TEST_CASE("perversities are keyed by stratum ids, not space identity")
{
    StratifiedSpace one = strata::cone_stratified(strata::octahedron());
    StratifiedSpace two = strata::cone_stratified(strata::octahedron());
    Perversity sum = Perversity::top(one) + Perversity::zero(two);
    CHECK(sum == Perversity::top(one));
}

TEST_CASE("leq is a partial order")
{
    StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
    Perversity p = Perversity::from_values(susp, {{"S0_0", 1}, {"S0_1", 0}});
    Perversity q = Perversity::from_values(susp, {{"S0_0", 0}, {"S0_1", 1}});
    CHECK(leq(p, p));
    CHECK_FALSE(leq(p, q));
    CHECK_FALSE(leq(q, p));
    CHECK(leq(Perversity::zero(susp), Perversity::top(susp)));
    CHECK(leq(q, p + q));
}

TEST_CASE("rendering is deterministic")
{
    StratifiedSpace susp = strata::suspension_stratified(strata::octahedron());
    Perversity p = Perversity::from_values(susp, {{"S0_1", 2}, {"S0_0", 1}});
    CHECK(p.to_string() == "S0_0=1,S0_1=2");
}
