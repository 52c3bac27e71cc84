/**
 * Modelled circle actions on stratified pseudomanifolds.
 *
 * A model consists of the total space X, the orbit space B = X/S1, a map of
 * strata, isotropy labels (mobile or fixed) per total-space stratum, and,
 * for fixed strata, link models and an Euler flag recording whether the
 * associated twisting class vanishes.  Perversities are always given on the
 * orbit-space strata and pulled back through the stratum map.
 *
 * The classification assigns each singular orbit stratum its shifts
 * chi (0 mobile / 1 fixed) and e (0 mobile, 1 fixed untwisted, 2 fixed
 * twisted = "perverse").  Unknown Euler flags are resolved by testing the
 * product formula  ih(X)_i = ih(B)_{i-1} + ih(B, qbar-e)_i  on the link.
 *
 * Gysin term dimensions are produced by one of three routes: directly as
 * ih(B, qbar - chi) when no stratum is perverse; from the link of a single
 * perverse apex when both spaces are cones over that apex; or by solving
 * the Gysin sequence degreewise when every perverse stratum is an isolated
 * point and exactness pins every rank.  Anything else is refused with
 * NO_CLOSED_FORM rather than guessed.
 *
 * Residue dimensions near a perverse stratum combine the homology of the
 * stratum closure with a stalk table read off the stratum's link: link
 * residues in low degrees, then kernels of the two connecting maps, then
 * zero from degree qbar(S) on.
 */
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strata/core.hpp"
#include "strata/homology.hpp"
#include "strata/intersection.hpp"
#include "strata/les.hpp"
#include "strata/perversity.hpp"
#include "strata/stratify.hpp"

namespace strata {

struct ActionModel {
    std::string name;
    StratifiedSpace total;  // X
    StratifiedSpace orbit;  // B
    std::map<std::string, std::string> stratum_map;  // X stratum id -> B stratum id
    std::map<std::string, std::string> isotropy;     // X stratum id -> "mobile" | "fixed"
    std::map<std::string, std::shared_ptr<const ActionModel>> links;  // X stratum id -> link
    std::map<std::string, std::string> euler_flags;  // X stratum id -> zero|nonzero|unknown
};

/** Structural consistency of a model; throws on the first defect. */
inline void validate_action(const ActionModel& m)
{
    if (m.total.dim() != m.orbit.dim() + 1)
        throw StrataError(Code::SPACE_MISMATCH, "total space must have orbit dimension + 1");
    std::set<std::string> mapped_singular_targets;
    for (const Stratum& s : m.total.strata) {
        auto it = m.stratum_map.find(s.id);
        if (it == m.stratum_map.end())
            throw StrataError(Code::SPACE_MISMATCH, "stratum_map misses total stratum " + s.id);
        const Stratum* target = m.orbit.find_stratum(it->second);
        if (!target)
            throw StrataError(Code::SPACE_MISMATCH, "stratum_map target " + it->second
                                                        + " is not an orbit stratum");
        auto iso = m.isotropy.find(s.id);
        if (iso == m.isotropy.end() || (iso->second != "mobile" && iso->second != "fixed"))
            throw StrataError(Code::SPACE_MISMATCH, "stratum " + s.id
                                                        + " needs isotropy mobile or fixed");
        int expected = iso->second == "mobile" ? target->dim + 1 : target->dim;
        if (s.dim != expected)
            throw StrataError(Code::SPACE_MISMATCH, "stratum " + s.id
                                                        + " has the wrong dimension over "
                                                        + target->id);
        if (s.singular != target->singular)
            throw StrataError(Code::SPACE_MISMATCH, "stratum " + s.id
                                                        + " and its image differ in singularity");
        if (s.singular && !mapped_singular_targets.insert(target->id).second)
            throw StrataError(Code::SPACE_MISMATCH,
                              "two singular strata share the image " + target->id);
    }
    for (const Stratum* t : m.orbit.singular_strata())
        if (!mapped_singular_targets.count(t->id))
            throw StrataError(Code::SPACE_MISMATCH, "orbit stratum " + t->id + " has no preimage");
    for (const auto& [id, flag] : m.euler_flags)
        if (flag != "zero" && flag != "nonzero" && flag != "unknown")
            throw StrataError(Code::BAD_INPUT, "euler flag for " + id + " must be zero|nonzero|unknown");
}

/** The singular total-space stratum over a singular orbit stratum. */
inline const Stratum& total_preimage(const ActionModel& m, const std::string& orbit_id)
{
    for (const Stratum& s : m.total.strata) {
        auto it = m.stratum_map.find(s.id);
        if (s.singular && it != m.stratum_map.end() && it->second == orbit_id)
            return s;
    }
    throw StrataError(Code::SPACE_MISMATCH, "no singular stratum over " + orbit_id);
}

/** Transport a perversity on the orbit strata to the total-space strata. */
inline Perversity pull_back(const ActionModel& m, const Perversity& qbar)
{
    std::map<std::string, int> values;
    for (const Stratum* s : m.total.singular_strata())
        values[s->id] = qbar.at(m.stratum_map.at(s->id));
    return Perversity::from_values(m.total, values);
}

struct StrataClassification {
    std::map<std::string, std::string> labels;  // orbit stratum id ->
                                                // mobile | fixed-nonperverse | perverse
    Perversity chi;  // 1 on fixed strata, 0 on mobile
    Perversity e;    // 0 mobile, 1 fixed untwisted, 2 perverse

    std::vector<std::string> perverse_ids() const
    {
        std::vector<std::string> out;
        for (const auto& [id, v] : e.values())
            if (v == 2)
                out.push_back(id);
        return out;
    }

    bool any_perverse() const { return !perverse_ids().empty(); }
};

enum class EulerTest { ZeroConsistent, NonzeroCertified };

inline const char* euler_test_name(EulerTest t)
{
    return t == EulerTest::ZeroConsistent ? "zero_consistent" : "nonzero_certified";
}

inline StrataClassification classify(const ActionModel& m);
inline EulerTest euler_product_test(const ActionModel& m, const Perversity& qbar);
inline BettiTable gysin_term_dims(const ActionModel& m, const Perversity& qbar);
inline BettiTable lower_residue_dims(const ActionModel& m, const Perversity& qbar);

namespace detail {

/** Fetch and sanity-check the link model over an orbit stratum. */
inline const ActionModel& resolve_link(const ActionModel& m, const std::string& orbit_id)
{
    const Stratum& xs = total_preimage(m, orbit_id);
    auto it = m.links.find(xs.id);
    if (it == m.links.end() || !it->second)
        throw StrataError(Code::UNRESOLVED_LINK, "no link model over stratum " + orbit_id);
    const ActionModel& link = *it->second;
    const Stratum& bs = m.orbit.stratum(orbit_id);
    if (link.total.dim() != m.total.dim() - xs.dim - 1
        || link.orbit.dim() != m.orbit.dim() - bs.dim - 1)
        throw StrataError(Code::INVALID_LINK, "link of " + orbit_id + " has inconsistent dimension");
    return link;
}

/** Links are only usable degreewise when they carry no singular strata. */
inline const ActionModel& resolve_plain_link(const ActionModel& m, const std::string& orbit_id)
{
    const ActionModel& link = resolve_link(m, orbit_id);
    if (link.total.has_singular_strata() || link.orbit.has_singular_strata())
        throw StrataError(Code::UNRESOLVED_LINK,
                          "link over " + orbit_id + " is itself stratified; "
                          "no perversity transport is defined");
    return link;
}

/** Feasibility-checked Gysin sequence report of a plain link model. */
inline LESReport link_gysin_report(const ActionModel& link, BettiTable* gysin_out = nullptr)
{
    Perversity none;
    BettiTable g = gysin_term_dims(link, none);
    LESReport rep = les_feasible(gysin_sequence_terms(homology_betti(link.orbit.complex),
                                                      homology_betti(link.total.complex), g));
    if (!rep.feasible)
        throw StrataError(Code::INVALID_LINK, "link Gysin dimensions are not exact at position "
                                                  + std::to_string(rep.violation_position));
    if (gysin_out)
        *gysin_out = g;
    return rep;
}

/** Feasibility-checked lower sequence report of a plain link model. */
inline LESReport link_lower_report(const ActionModel& link, BettiTable* residues_out = nullptr)
{
    Perversity none;
    BettiTable g = gysin_term_dims(link, none);
    BettiTable r = lower_residue_dims(link, none);
    LESReport rep =
        les_feasible(lower_sequence_terms(homology_betti(link.orbit.complex), g, r));
    if (!rep.feasible)
        throw StrataError(Code::INVALID_LINK, "link lower sequence is not exact at position "
                                                  + std::to_string(rep.violation_position));
    if (residues_out)
        *residues_out = r;
    return rep;
}

}  // namespace detail

inline StrataClassification classify(const ActionModel& m)
{
    std::map<std::string, int> chi, e;
    for (const Stratum* t : m.orbit.singular_strata()) {
        const Stratum& s = total_preimage(m, t->id);
        const std::string& iso = m.isotropy.at(s.id);
        if (iso == "mobile") {
            chi[t->id] = 0;
            e[t->id] = 0;
            continue;
        }
        chi[t->id] = 1;
        auto flag_it = m.euler_flags.find(s.id);
        std::string flag = flag_it == m.euler_flags.end() ? "unknown" : flag_it->second;
        if (flag == "zero") {
            e[t->id] = 1;
        } else if (flag == "nonzero") {
            e[t->id] = 2;
        } else {
            // Resolve by testing the product formula on the link over the
            // whole constant range of geometric perversities.
            const ActionModel* link = nullptr;
            try {
                link = &detail::resolve_link(m, t->id);
            } catch (const StrataError& err) {
                if (err.code() == Code::INVALID_LINK)
                    throw;
                throw StrataError(Code::UNRESOLVED_EULER_FLAG,
                                  "no link to resolve the euler flag of " + t->id);
            }
            int top = 0;
            for (const Stratum* ls : link->orbit.singular_strata())
                top = std::max(top, link->orbit.codim(*ls) - 2);
            bool certified = false;
            for (int c = 0; c <= top; ++c) {
                EulerTest result;
                try {
                    result = euler_product_test(*link, Perversity::constant(link->orbit, c));
                } catch (const StrataError&) {
                    throw StrataError(Code::UNRESOLVED_EULER_FLAG,
                                      "link product test is inconclusive for " + t->id);
                }
                if (result == EulerTest::NonzeroCertified)
                    certified = true;
            }
            e[t->id] = certified ? 2 : 1;
        }
    }
    StrataClassification out;
    for (const auto& [id, v] : e)
        out.labels[id] = v == 0 ? "mobile" : v == 1 ? "fixed-nonperverse" : "perverse";
    out.chi = Perversity::from_values(m.orbit, chi);
    out.e = Perversity::from_values(m.orbit, e);
    return out;
}

/**
 * Test the product formula ih(X, qbar) = ih(B, qbar) * (1,1) degreewise.
 * A mismatch at any supplied qbar certifies a nonzero twisting class;
 * agreement throughout is merely consistent with zero.  Refuses models
 * with perverse strata.
 */
inline EulerTest euler_product_test(const ActionModel& m, const std::vector<Perversity>& qbars)
{
    StrataClassification cls = classify(m);
    if (cls.any_perverse())
        throw StrataError(Code::PERVERSE_PRESENT,
                          "product test is undefined with perverse strata present");
    BettiTable circle;
    circle.set(0, 1);
    circle.set(1, 1);
    for (const Perversity& qbar : qbars) {
        BettiTable lhs = ih_betti(m.total, pull_back(m, qbar));
        if (!(lhs == convolve(ih_betti(m.orbit, qbar), circle)))
            return EulerTest::NonzeroCertified;
    }
    return EulerTest::ZeroConsistent;
}

inline EulerTest euler_product_test(const ActionModel& m, const Perversity& qbar)
{
    return euler_product_test(m, std::vector<Perversity>{qbar});
}

namespace detail {

/** Route 2: both spaces are cones with the perverse stratum at the apex. */
inline bool cone_shaped_over(const ActionModel& m, const std::string& orbit_id)
{
    const Stratum& bs = m.orbit.stratum(orbit_id);
    const Stratum& xs = total_preimage(m, orbit_id);
    if (bs.dim != 0 || xs.dim != 0 || bs.open_cells.size() != 1 || xs.open_cells.size() != 1)
        return false;
    Vertex vb = bs.open_cells[0][0];
    Vertex vx = xs.open_cells[0][0];
    for (const Simplex& f : m.orbit.complex.cells(m.orbit.dim()))
        if (!std::binary_search(f.begin(), f.end(), vb))
            return false;
    for (const Simplex& f : m.total.complex.cells(m.total.dim()))
        if (!std::binary_search(f.begin(), f.end(), vx))
            return false;
    return true;
}

inline BettiTable gysin_from_cone_link(const ActionModel& m, const Perversity& qbar,
                                       const std::string& orbit_id)
{
    const ActionModel& link = resolve_plain_link(m, orbit_id);
    int q = qbar.at(orbit_id);
    BettiTable link_gysin;
    LESReport rep = link_gysin_report(link, &link_gysin);
    BettiTable out;
    for (int i = 0; i <= q - 2; ++i)
        out.set(i, link_gysin.at(i));
    if (q - 1 >= 0)
        out.set(q - 1, link_gysin.at(q - 1) - gysin_connecting_rank(rep, q - 1));
    return out;
}

inline BettiTable gysin_from_les_pins(const ActionModel& m, const Perversity& qbar)
{
    BettiTable hb = ih_betti(m.orbit, qbar);
    BettiTable hx = ih_betti(m.total, pull_back(m, qbar));
    int top = std::max(hb.top_degree(), hx.top_degree());
    std::vector<long long> p(static_cast<size_t>(top) + 3, 0);
    for (int j = 0; j <= top; ++j) {
        long long forced;
        if (j == 0)
            forced = hx.at(0);
        else if (j == 1)
            forced = hb.at(1);
        else if (std::min(hb.at(j), hx.at(j)) == 0)
            forced = 0;
        else
            throw StrataError(Code::NO_CLOSED_FORM,
                              "Gysin rank in degree " + std::to_string(j)
                                  + " is not pinned by exactness");
        if (forced > std::min(hb.at(j), hx.at(j)) || (j == 0 && hb.at(0) != hx.at(0)))
            throw StrataError(Code::NO_CLOSED_FORM,
                              "exactness pins are inconsistent in degree " + std::to_string(j));
        p[static_cast<size_t>(j)] = forced;
    }
    BettiTable out;
    for (int j = 0; j <= top; ++j) {
        long long s_next = hx.at(j + 1) - p[static_cast<size_t>(j) + 1];
        long long t_next2 = hb.at(j + 2) - p[static_cast<size_t>(j) + 2];
        if (s_next < 0 || t_next2 < 0)
            throw StrataError(Code::NO_CLOSED_FORM, "exactness pins give a negative rank");
        out.set(j, s_next + t_next2);
    }
    return out;
}

}  // namespace detail

/**
 * Graded dimensions of the Gysin term HG of the model at qbar.
 * See the header comment for the three supported routes.
 */
inline BettiTable gysin_term_dims(const ActionModel& m, const Perversity& qbar)
{
    StrataClassification cls = classify(m);
    if (!cls.any_perverse())
        return ih_betti(m.orbit, qbar - cls.chi);

    std::vector<std::string> perverse = cls.perverse_ids();
    if (perverse.size() == 1 && detail::cone_shaped_over(m, perverse.front()))
        return detail::gysin_from_cone_link(m, qbar, perverse.front());

    for (const std::string& id : perverse) {
        const Stratum& bs = m.orbit.stratum(id);
        if (bs.dim != 0)
            throw StrataError(Code::NO_CLOSED_FORM,
                              "perverse stratum " + id + " is not an isolated point");
        detail::resolve_link(m, id);
    }
    return detail::gysin_from_les_pins(m, qbar);
}

/**
 * Stalk dimensions of the residual sheaf at a perverse orbit stratum:
 * link residues below qbar(S)-2, kernels of the two link connecting maps
 * at qbar(S)-2 and qbar(S)-1, zero from qbar(S) on.
 */
inline BettiTable stalk_table(const ActionModel& m, const Perversity& qbar, const std::string& orbit_id)
{
    m.orbit.stratum(orbit_id);  // unknown ids fail loudly before anything else
    StrataClassification cls = classify(m);
    const auto& evalues = cls.e.values();
    auto it = evalues.find(orbit_id);
    if (it == evalues.end() || it->second != 2)
        throw StrataError(Code::NOT_PERVERSE, "stalk table requires a perverse stratum, got "
                                                  + orbit_id);
    const ActionModel& link = detail::resolve_plain_link(m, orbit_id);
    int q = qbar.at(orbit_id);

    BettiTable out;
    if (q <= 0)
        return out;

    Perversity none;
    BettiTable link_residues = lower_residue_dims(link, none);
    for (int i = 0; i <= q - 3; ++i)
        out.set(i, link_residues.at(i));
    if (q - 2 >= 0) {
        LESReport lower_rep = detail::link_lower_report(link);
        out.set(q - 2, link_residues.at(q - 2) - lower_connecting_rank(lower_rep, q - 2));
    }
    BettiTable link_gysin;
    LESReport gysin_rep = detail::link_gysin_report(link, &link_gysin);
    out.set(q - 1, link_gysin.at(q - 1) - gysin_connecting_rank(gysin_rep, q - 1));
    return out;
}

/**
 * Graded dimensions of the residual approximation term: the sum over
 * perverse strata of (homology of the stratum closure) * (stalk table).
 * Perverse strata must be exceptional: closed, with vanishing first
 * homology, so the local system is forced to be trivial.
 */
inline BettiTable lower_residue_dims(const ActionModel& m, const Perversity& qbar)
{
    StrataClassification cls = classify(m);
    BettiTable out;
    for (const std::string& id : cls.perverse_ids()) {
        const Stratum& bs = m.orbit.stratum(id);
        bool closed = true;
        for (int d = 0; d <= bs.closure.dim(); ++d)
            for (const Simplex& c : bs.closure.cells(d))
                closed = closed
                         && std::find(bs.open_cells.begin(), bs.open_cells.end(), c)
                                != bs.open_cells.end();
        BettiTable closure_homology = homology_betti(bs.closure);
        if (!closed || closure_homology.at(1) != 0)
            throw StrataError(Code::NONEXCEPTIONAL,
                              "perverse stratum " + id + " is not exceptional");
        out = out + convolve(closure_homology, stalk_table(m, qbar, id));
    }
    return out;
}

/** Replacement tables for verification runs (testing hook). */
struct VerifyOverrides {
    std::optional<BettiTable> total_ih;
    std::optional<BettiTable> orbit_ih;
    std::optional<BettiTable> gysin;
    std::optional<BettiTable> residues;
    std::optional<BettiTable> lower_ih;
};

struct VerifyReport {
    bool pass = false;
    Perversity qbar;
    StrataClassification classification;
    BettiTable total_ih;   // T_X
    BettiTable orbit_ih;   // T_B
    BettiTable gysin;      // HG
    BettiTable residues;   // Hres
    BettiTable lower_ih;   // E = ih(B, qbar - e)
    BettiTable step;       // step between qbar-e and qbar-chi
    LESReport gysin_les;
    LESReport lower_les;
    std::vector<std::string> failures;
};

/**
 * Cross-check every computed table of the model at qbar: exactness of the
 * Gysin and lower sequences plus the three Euler-characteristic identities
 * they imply.  Overrides substitute externally supplied tables.
 */
inline VerifyReport verify(const ActionModel& m, const Perversity& qbar,
                           const VerifyOverrides* overrides = nullptr)
{
    ValidationReport vt = validate_pseudomanifold(m.total);
    ValidationReport vo = validate_pseudomanifold(m.orbit);
    if (!vt.ok() || !vo.ok()) {
        const auto& first = (!vt.ok() ? vt : vo).problems.front();
        throw StrataError(Code::INVALID_SPACE,
                          std::string(!vt.ok() ? "total" : "orbit") + " space invalid: "
                              + code_name(first.first) + " (" + first.second + ")");
    }
    validate_action(m);

    VerifyReport rep;
    rep.qbar = qbar;
    rep.classification = classify(m);
    const Perversity& chi = rep.classification.chi;
    const Perversity& e = rep.classification.e;

    rep.total_ih = ih_betti(m.total, pull_back(m, qbar));
    rep.orbit_ih = ih_betti(m.orbit, qbar);
    rep.gysin = gysin_term_dims(m, qbar);
    rep.residues = lower_residue_dims(m, qbar);
    rep.lower_ih = ih_betti(m.orbit, qbar - e);
    if (overrides) {
        if (overrides->total_ih)
            rep.total_ih = *overrides->total_ih;
        if (overrides->orbit_ih)
            rep.orbit_ih = *overrides->orbit_ih;
        if (overrides->gysin)
            rep.gysin = *overrides->gysin;
        if (overrides->residues)
            rep.residues = *overrides->residues;
        if (overrides->lower_ih)
            rep.lower_ih = *overrides->lower_ih;
    }

    rep.gysin_les = les_feasible(gysin_sequence_terms(rep.orbit_ih, rep.total_ih, rep.gysin));
    if (!rep.gysin_les.feasible)
        rep.failures.push_back("Gysin sequence infeasible at position "
                               + std::to_string(rep.gysin_les.violation_position));
    rep.lower_les = les_feasible(lower_sequence_terms(rep.lower_ih, rep.gysin, rep.residues));
    if (!rep.lower_les.feasible)
        rep.failures.push_back("lower sequence infeasible at position "
                               + std::to_string(rep.lower_les.violation_position));

    if (rep.gysin.euler() != rep.orbit_ih.euler() - rep.total_ih.euler())
        rep.failures.push_back("chi(HG) != chi(T_B) - chi(T_X)");
    if (rep.gysin.euler() != rep.lower_ih.euler() + rep.residues.euler())
        rep.failures.push_back("chi(HG) != chi(E) + chi(Hres)");

    rep.step = step_ih_betti(m.orbit, qbar - e, qbar - chi);
    BettiTable upper = ih_betti(m.orbit, qbar - chi);
    if (rep.step.euler() != upper.euler() - rep.lower_ih.euler())
        rep.failures.push_back("chi(step) != chi(ih(B, qbar-chi)) - chi(E)");

    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace strata
