/**
 * JSON formats:
 *
 *  strata-complex/1  { format, vertices, facets }
 *  strata-space/1    { format, complex, filtration, strata? }
 *  strata-action/1   { format, name, space, orbit_space, stratum_map,
 *                      isotropy, links?, euler_flags? }
 *
 * Spaces inside an action may be inline objects or references of the form
 * "catalog:<action>/total" / "catalog:<action>/orbit"; links are either
 * inline action objects or catalog action names.  Writers emit canonical
 * documents (sorted keys where the data is a map, two-space indentation,
 * trailing newline), so reading a written document and writing it again is
 * byte-identical.
 */
#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/action.hpp"
#include "strata/catalog.hpp"
#include "strata/core.hpp"
#include "strata/les.hpp"
#include "strata/perversity.hpp"
#include "strata/stratify.hpp"

namespace strata {

using json = nlohmann::ordered_json;

inline json to_json(const BettiTable& t) { return json(t.counts); }

inline BettiTable betti_from_json(const json& j)
{
    if (!j.is_array())
        throw StrataError(Code::BAD_INPUT, "expected an array of dimensions");
    BettiTable t;
    for (const auto& v : j)
        t.counts.push_back(v.get<long long>());
    return t;
}

namespace detail {

inline Simplex simplex_from_json(const json& j)
{
    if (!j.is_array() || j.empty())
        throw StrataError(Code::BAD_INPUT, "a simplex must be a non-empty array of vertex ids");
    Simplex s;
    for (const auto& v : j)
        s.push_back(v.get<Vertex>());
    return make_simplex(s);
}

inline json simplices_to_json(const std::vector<Simplex>& cells)
{
    json out = json::array();
    for (const Simplex& s : cells)
        out.push_back(json(s));
    return out;
}

}  // namespace detail

inline json to_json(const SimplicialComplex& c)
{
    json j;
    j["format"] = "strata-complex/1";
    j["vertices"] = json(c.vertices());
    j["facets"] = detail::simplices_to_json(c.facets());
    return j;
}

inline SimplicialComplex complex_from_json(const json& j)
{
    if (!j.is_object() || j.value("format", "") != "strata-complex/1")
        throw StrataError(Code::BAD_INPUT, "expected a strata-complex/1 object");
    std::vector<Simplex> gen;
    for (const auto& f : j.at("facets"))
        gen.push_back(detail::simplex_from_json(f));
    SimplicialComplex c = SimplicialComplex::from_simplices(gen);
    std::vector<Vertex> declared;
    for (const auto& v : j.at("vertices"))
        declared.push_back(v.get<Vertex>());
    std::sort(declared.begin(), declared.end());
    if (declared != c.vertices())
        throw StrataError(Code::BAD_INPUT, "vertex list does not match the facets");
    return c;
}

inline json to_json(const StratifiedSpace& sp)
{
    json j;
    j["format"] = "strata-space/1";
    j["complex"] = to_json(sp.complex);
    json filtration = json::array();
    int n = sp.dim();
    int last_nonempty = -1;
    std::vector<json> levels;
    for (int lev = 0; lev < n; ++lev) {
        std::vector<Simplex> fresh =
            lev == 0 ? detail::all_cells(sp.filtration[0])
                     : detail::level_difference(sp.filtration[static_cast<size_t>(lev)],
                                                sp.filtration[static_cast<size_t>(lev) - 1]);
        if (!fresh.empty())
            last_nonempty = lev;
        levels.push_back(detail::simplices_to_json(fresh));
    }
    for (int lev = 0; lev <= last_nonempty; ++lev)
        filtration.push_back(levels[static_cast<size_t>(lev)]);
    j["filtration"] = filtration;
    json strata = json::array();
    for (const Stratum& s : sp.strata) {
        json entry;
        entry["id"] = s.id;
        entry["cells"] = detail::simplices_to_json(s.open_cells);
        strata.push_back(entry);
    }
    j["strata"] = strata;
    return j;
}

inline StratifiedSpace space_from_json(const json& j)
{
    if (!j.is_object() || j.value("format", "") != "strata-space/1")
        throw StrataError(Code::BAD_INPUT, "expected a strata-space/1 object");
    SimplicialComplex c = complex_from_json(j.at("complex"));
    std::vector<std::vector<Simplex>> levels;
    for (const auto& level : j.at("filtration")) {
        std::vector<Simplex> gen;
        for (const auto& s : level)
            gen.push_back(detail::simplex_from_json(s));
        levels.push_back(std::move(gen));
    }
    if (!j.contains("strata"))
        return make_stratified(c, levels);
    std::vector<StratumSpec> declared;
    for (const auto& entry : j.at("strata")) {
        StratumSpec spec;
        spec.id = entry.at("id").get<std::string>();
        for (const auto& s : entry.at("cells"))
            spec.cells.push_back(detail::simplex_from_json(s));
        declared.push_back(std::move(spec));
    }
    return make_stratified(c, levels, &declared);
}

inline json to_json(const ActionModel& m);
inline ActionModel action_from_json(const json& j);

namespace detail {

/** Serialize a space, or nothing: callers decide between ref and inline. */
inline json space_ref_or_inline(const StratifiedSpace& sp) { return to_json(sp); }

inline StratifiedSpace space_from_ref_or_inline(const json& j)
{
    if (j.is_string()) {
        std::string ref = j.get<std::string>();
        const std::string prefix = "catalog:";
        auto slash = ref.rfind('/');
        if (ref.rfind(prefix, 0) != 0 || slash == std::string::npos)
            throw StrataError(Code::BAD_INPUT, "bad space reference: " + ref);
        std::string name = ref.substr(prefix.size(), slash - prefix.size());
        std::string part = ref.substr(slash + 1);
        ActionModel m = catalog_action(name);
        if (part == "total")
            return m.total;
        if (part == "orbit")
            return m.orbit;
        throw StrataError(Code::BAD_INPUT, "space reference part must be total or orbit");
    }
    return space_from_json(j);
}

}  // namespace detail

inline json to_json(const ActionModel& m)
{
    json j;
    j["format"] = "strata-action/1";
    j["name"] = m.name;
    j["space"] = detail::space_ref_or_inline(m.total);
    j["orbit_space"] = detail::space_ref_or_inline(m.orbit);
    json map = json::array();
    for (const auto& [x, b] : m.stratum_map)
        map.push_back(json::array({x, b}));
    j["stratum_map"] = map;
    json iso = json::object();
    for (const auto& [id, v] : m.isotropy)
        iso[id] = v;
    j["isotropy"] = iso;
    if (!m.links.empty()) {
        json links = json::object();
        std::vector<std::string> known = catalog_names();
        for (const auto& [id, link] : m.links) {
            if (link && std::find(known.begin(), known.end(), link->name) != known.end())
                links[id] = link->name;
            else if (link)
                links[id] = to_json(*link);
        }
        j["links"] = links;
    }
    if (!m.euler_flags.empty()) {
        json flags = json::object();
        for (const auto& [id, v] : m.euler_flags)
            flags[id] = v;
        j["euler_flags"] = flags;
    }
    return j;
}

inline ActionModel action_from_json(const json& j)
{
    if (!j.is_object() || j.value("format", "") != "strata-action/1")
        throw StrataError(Code::BAD_INPUT, "expected a strata-action/1 object");
    ActionModel m;
    m.name = j.value("name", "");
    m.total = detail::space_from_ref_or_inline(j.at("space"));
    m.orbit = detail::space_from_ref_or_inline(j.at("orbit_space"));
    for (const auto& pair : j.at("stratum_map")) {
        if (!pair.is_array() || pair.size() != 2)
            throw StrataError(Code::BAD_INPUT, "stratum_map entries must be [total, orbit] pairs");
        m.stratum_map[pair[0].get<std::string>()] = pair[1].get<std::string>();
    }
    for (const auto& [id, v] : j.at("isotropy").items())
        m.isotropy[id] = v.get<std::string>();
    if (j.contains("links")) {
        for (const auto& [id, v] : j.at("links").items()) {
            if (v.is_string())
                m.links[id] = std::make_shared<const ActionModel>(catalog_action(v.get<std::string>()));
            else
                m.links[id] = std::make_shared<const ActionModel>(action_from_json(v));
        }
    }
    if (j.contains("euler_flags"))
        for (const auto& [id, v] : j.at("euler_flags").items())
            m.euler_flags[id] = v.get<std::string>();
    return m;
}

inline json to_json(const Perversity& p)
{
    json j = json::object();
    for (const auto& [id, v] : p.values())
        j[id] = v;
    return j;
}

inline json to_json(const ValidationReport& r)
{
    json j;
    j["ok"] = r.ok();
    json problems = json::array();
    for (const auto& [code, detail] : r.problems) {
        json p;
        p["code"] = code_name(code);
        p["detail"] = detail;
        problems.push_back(p);
    }
    j["problems"] = problems;
    return j;
}

inline json to_json(const LESReport& r)
{
    json j;
    j["feasible"] = r.feasible;
    j["violation_position"] = r.violation_position;
    j["terms"] = json(r.terms);
    if (r.feasible) {
        std::vector<long long> ranks(r.arrow_rank.begin() + 1, r.arrow_rank.end());
        j["arrow_ranks"] = json(ranks);
    }
    return j;
}

inline json to_json(const VerifyReport& r)
{
    json j;
    j["pass"] = r.pass;
    j["qbar"] = to_json(r.qbar);
    json cls;
    cls["labels"] = json(r.classification.labels);
    cls["chi"] = to_json(r.classification.chi);
    cls["e"] = to_json(r.classification.e);
    j["classification"] = cls;
    json tables;
    tables["total_ih"] = to_json(r.total_ih);
    tables["orbit_ih"] = to_json(r.orbit_ih);
    tables["gysin"] = to_json(r.gysin);
    tables["residues"] = to_json(r.residues);
    tables["lower_ih"] = to_json(r.lower_ih);
    tables["step"] = to_json(r.step);
    j["tables"] = tables;
    j["gysin_les"] = to_json(r.gysin_les);
    j["lower_les"] = to_json(r.lower_les);
    j["failures"] = json(r.failures);
    return j;
}

/** Canonical rendering: two-space indent plus trailing newline. */
inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw StrataError(Code::BAD_INPUT, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw StrataError(Code::BAD_INPUT, "cannot parse " + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out)
        throw StrataError(Code::BAD_INPUT, "cannot write " + path);
    out << dump_canonical(j);
}

}  // namespace strata
