/**
 * Curated catalog of modelled circle actions used throughout the tests and
 * the command-line tool.
 *
 *  - hopf:                the Hopf fibration S3 -> S2 (join of two squares
 *                         over the octahedron), entirely mobile;
 *  - weighted_hopf_2/3:   weighted variants with one exceptional orbit
 *                         circle over a teardrop apex (the weight only
 *                         distinguishes the names; the dimension data
 *                         agrees);
 *  - cone_hopf:           the cone of the Hopf action: one fixed apex with
 *                         link hopf and nonvanishing twisting class;
 *  - susp_hopf:           its double, the suspension, with two fixed
 *                         apexes;
 *  - free_torus_rotation: a free rotation of S2 x S1 over S2.
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "strata/action.hpp"
#include "strata/build.hpp"
#include "strata/core.hpp"
#include "strata/stratify.hpp"

namespace strata {

/** Join of the squares 0-3 and 4-7: a 16-tetrahedron S3. */
inline SimplicialComplex hopf_total_complex()
{
    std::vector<Simplex> second;
    for (int i = 0; i < 4; ++i)
        second.push_back(make_simplex({4 + i, 4 + (i + 1) % 4}));
    return join(cycle_complex(4), SimplicialComplex::from_simplices(second));
}

inline std::vector<std::string> catalog_names()
{
    return {"hopf",      "weighted_hopf_2", "weighted_hopf_3",
            "cone_hopf", "susp_hopf",       "free_torus_rotation"};
}

inline ActionModel catalog_action(const std::string& name)
{
    ActionModel m;
    m.name = name;

    if (name == "hopf") {
        m.total = trivial_stratification(hopf_total_complex());
        m.orbit = trivial_stratification(octahedron());
        m.stratum_map = {{"S3_0", "S2_0"}};
        m.isotropy = {{"S3_0", "mobile"}};
        return m;
    }

    if (name == "weighted_hopf_2" || name == "weighted_hopf_3") {
        std::vector<std::vector<Simplex>> total_levels = {
            {}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
        m.total = make_stratified(hopf_total_complex(), total_levels);
        std::vector<std::vector<Simplex>> orbit_levels = {{{4}}};
        m.orbit = make_stratified(suspension(cycle_complex(4)), orbit_levels);
        m.stratum_map = {{"S1_0", "S0_0"}, {"S3_0", "S2_0"}};
        m.isotropy = {{"S1_0", "mobile"}, {"S3_0", "mobile"}};
        return m;
    }

    if (name == "cone_hopf") {
        m.total = cone_stratified(hopf_total_complex());
        m.orbit = cone_stratified(octahedron());
        m.stratum_map = {{"S0_0", "S0_0"}, {"S4_0", "S3_0"}};
        m.isotropy = {{"S0_0", "fixed"}, {"S4_0", "mobile"}};
        m.links = {{"S0_0", std::make_shared<const ActionModel>(catalog_action("hopf"))}};
        m.euler_flags = {{"S0_0", "nonzero"}};
        return m;
    }

    if (name == "susp_hopf") {
        m.total = suspension_stratified(hopf_total_complex());
        m.orbit = suspension_stratified(octahedron());
        m.stratum_map = {{"S0_0", "S0_0"}, {"S0_1", "S0_1"}, {"S4_0", "S3_0"}};
        m.isotropy = {{"S0_0", "fixed"}, {"S0_1", "fixed"}, {"S4_0", "mobile"}};
        auto link = std::make_shared<const ActionModel>(catalog_action("hopf"));
        m.links = {{"S0_0", link}, {"S0_1", link}};
        m.euler_flags = {{"S0_0", "nonzero"}, {"S0_1", "nonzero"}};
        return m;
    }

    if (name == "free_torus_rotation") {
        m.total = trivial_stratification(product(octahedron(), cycle_complex(4)));
        m.orbit = trivial_stratification(octahedron());
        m.stratum_map = {{"S3_0", "S2_0"}};
        m.isotropy = {{"S3_0", "mobile"}};
        return m;
    }

    throw StrataError(Code::BAD_INPUT, "unknown catalog action: " + name);
}

}  // namespace strata
