/**
 * Stratified simplicial pseudomanifolds.
 *
 * A stratified space is a complex together with a filtration by closed
 * subcomplexes X_0 <= X_1 <= ... <= X_n = X.  Strata are the connected
 * components of the level differences X_j \ X_{j-1}; they are derived
 * automatically from the filtration (ids "S<level>_<k>", components ordered
 * by their smallest cell) or taken from an explicit declaration.  The
 * singular set Sigma is X_{n-2}.
 *
 * Validation separates structural errors (thrown while constructing) from
 * geometric defects (collected into a ValidationReport): density of the
 * regular part, absence of codimension-one strata, the border order (the
 * closure of a stratum is a union of lower strata), fullness of singular
 * closures, and stratum connectivity.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strata/build.hpp"
#include "strata/complex.hpp"
#include "strata/core.hpp"
#include "strata/homology.hpp"

namespace strata {

struct Stratum {
    std::string id;
    int level = 0;                    // filtration level the stratum appears at
    int dim = -1;                     // largest open-cell dimension
    bool singular = false;
    std::vector<Simplex> open_cells;  // cells of X_level not in X_{level-1}
    SimplicialComplex closure;
};

/** Explicitly declared stratum: an id plus the cells of its open part. */
struct StratumSpec {
    std::string id;
    std::vector<Simplex> cells;
};

struct StratifiedSpace {
    SimplicialComplex complex;
    std::vector<SimplicialComplex> filtration;  // levels 0..n, last == complex
    std::vector<Stratum> strata;
    SimplicialComplex sigma;                    // the singular set X_{n-2}
    bool declared_strata = false;

    int dim() const { return complex.dim(); }

    int codim(const Stratum& s) const { return dim() - s.dim; }

    const Stratum* find_stratum(const std::string& id) const
    {
        for (const Stratum& s : strata)
            if (s.id == id)
                return &s;
        return nullptr;
    }

    const Stratum& stratum(const std::string& id) const
    {
        const Stratum* s = find_stratum(id);
        if (!s)
            throw StrataError(Code::BAD_INPUT, "unknown stratum id: " + id);
        return *s;
    }

    std::vector<const Stratum*> singular_strata() const
    {
        std::vector<const Stratum*> out;
        for (const Stratum& s : strata)
            if (s.singular)
                out.push_back(&s);
        return out;
    }

    bool has_singular_strata() const
    {
        return std::any_of(strata.begin(), strata.end(), [](const Stratum& s) { return s.singular; });
    }
};

struct ValidationReport {
    std::vector<std::pair<Code, std::string>> problems;

    bool ok() const { return problems.empty(); }

    bool has(Code c) const
    {
        return std::any_of(problems.begin(), problems.end(),
                           [c](const auto& p) { return p.first == c; });
    }
};

namespace detail {

/** All cells of a complex in (dimension, lex) order. */
inline std::vector<Simplex> all_cells(const SimplicialComplex& k) { return cells_in_id_order(k); }

/** Partition cells into connected components of the face-relation graph. */
inline std::vector<std::vector<Simplex>> face_components(const std::vector<Simplex>& cells)
{
    std::map<Simplex, int> index;
    for (size_t i = 0; i < cells.size(); ++i)
        index[cells[i]] = static_cast<int>(i);
    std::vector<int> parent(cells.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    for (size_t i = 0; i < cells.size(); ++i) {
        const Simplex& s = cells[i];
        if (s.size() == 1)
            continue;
        for (size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face;
            for (size_t k = 0; k < s.size(); ++k)
                if (k != drop)
                    face.push_back(s[k]);
            auto it = index.find(face);
            if (it == index.end())
                continue;
            int a = find(static_cast<int>(i));
            int b = find(it->second);
            if (a != b)
                parent[static_cast<size_t>(a)] = b;
        }
    }
    std::map<int, std::vector<Simplex>> groups;
    for (size_t i = 0; i < cells.size(); ++i)
        groups[find(static_cast<int>(i))].push_back(cells[i]);
    std::vector<std::vector<Simplex>> out;
    for (auto& [root, group] : groups) {
        std::sort(group.begin(), group.end(), [](const Simplex& a, const Simplex& b) {
            return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
        });
        out.push_back(std::move(group));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::make_pair(a.front().size(), a.front()) < std::make_pair(b.front().size(), b.front());
    });
    return out;
}

inline Stratum make_stratum(std::string id, int level, int n, std::vector<Simplex> cells)
{
    Stratum s;
    s.id = std::move(id);
    s.level = level;
    s.open_cells = std::move(cells);
    for (const Simplex& c : s.open_cells)
        s.dim = std::max(s.dim, simplex_dim(c));
    s.closure = SimplicialComplex::from_simplices(s.open_cells);
    s.singular = level < n;
    return s;
}

/** Cells of `outer` that are not cells of `inner`. */
inline std::vector<Simplex> level_difference(const SimplicialComplex& outer, const SimplicialComplex& inner)
{
    std::vector<Simplex> diff;
    for (int d = 0; d <= outer.dim(); ++d)
        for (const Simplex& s : outer.cells(d))
            if (!inner.contains(s))
                diff.push_back(s);
    return diff;
}

inline std::vector<Stratum> derive_strata(const std::vector<SimplicialComplex>& filtration)
{
    int n = static_cast<int>(filtration.size()) - 1;
    std::vector<Stratum> out;
    if (n < 0)
        return out;
    for (int j = 0; j <= n; ++j) {
        std::vector<Simplex> diff =
            j == 0 ? all_cells(filtration[0])
                   : level_difference(filtration[static_cast<size_t>(j)], filtration[static_cast<size_t>(j) - 1]);
        if (diff.empty())
            continue;
        int k = 0;
        for (auto& comp : face_components(diff))
            out.push_back(make_stratum("S" + std::to_string(j) + "_" + std::to_string(k++), j, n,
                                       std::move(comp)));
    }
    return out;
}

/** Assemble a space from a complete filtration, deriving strata. */
inline StratifiedSpace assemble(SimplicialComplex complex, std::vector<SimplicialComplex> filtration)
{
    StratifiedSpace sp;
    sp.complex = std::move(complex);
    sp.filtration = std::move(filtration);
    sp.strata = derive_strata(sp.filtration);
    int n = sp.dim();
    if (n >= 2)
        sp.sigma = sp.filtration[static_cast<size_t>(n) - 2];
    return sp;
}

}  // namespace detail

/**
 * Stratify a complex from per-level generating simplices.  Entry j of
 * `new_generators` lists the simplices entering the filtration at level j
 * (levels accumulate; missing trailing levels add nothing); the top level
 * is always the whole complex.  Declared strata, when given, replace the
 * automatically derived ones.
 */
inline StratifiedSpace make_stratified(const SimplicialComplex& complex,
                                       const std::vector<std::vector<Simplex>>& new_generators,
                                       const std::vector<StratumSpec>* declared = nullptr)
{
    int n = complex.dim();
    if (static_cast<int>(new_generators.size()) > n + 1)
        throw StrataError(Code::BAD_INPUT, "filtration has more levels than the dimension allows");
    std::vector<Simplex> accumulated;
    std::vector<SimplicialComplex> filtration;
    for (int j = 0; j <= n; ++j) {
        if (j < static_cast<int>(new_generators.size())) {
            for (const Simplex& g : new_generators[static_cast<size_t>(j)]) {
                Simplex s = make_simplex(g);
                if (!complex.contains(s))
                    throw StrataError(Code::MISSING_SIMPLEX,
                                      "filtration generator is not a cell of the complex");
                accumulated.push_back(std::move(s));
            }
        }
        filtration.push_back(j == n ? complex : SimplicialComplex::from_simplices(accumulated));
    }
    StratifiedSpace sp = detail::assemble(complex, std::move(filtration));

    if (declared) {
        std::vector<Stratum> strata;
        std::set<std::string> seen;
        for (const StratumSpec& spec : *declared) {
            if (!seen.insert(spec.id).second)
                throw StrataError(Code::BAD_INPUT, "duplicate stratum id: " + spec.id);
            int level = 0;
            std::vector<Simplex> cells;
            for (const Simplex& c : spec.cells) {
                Simplex s = make_simplex(c);
                if (!sp.complex.contains(s))
                    throw StrataError(Code::MISSING_SIMPLEX,
                                      "stratum cell is not a cell of the complex");
                for (int j = 0; j <= n; ++j) {
                    if (sp.filtration[static_cast<size_t>(j)].contains(s)) {
                        level = std::max(level, j);
                        break;
                    }
                }
                cells.push_back(std::move(s));
            }
            std::sort(cells.begin(), cells.end(), [](const Simplex& a, const Simplex& b) {
                return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
            });
            strata.push_back(detail::make_stratum(spec.id, level, n, std::move(cells)));
        }
        sp.strata = std::move(strata);
        sp.declared_strata = true;
    }
    return sp;
}

/** The trivial stratification: every point regular. */
inline StratifiedSpace trivial_stratification(const SimplicialComplex& complex)
{
    return make_stratified(complex, {});
}

/** Cone on a stratified space; the apex becomes a new bottom stratum. */
inline StratifiedSpace cone_stratified(const StratifiedSpace& base)
{
    Vertex apex = cone_apex(base.complex);
    int n = base.dim();
    std::vector<SimplicialComplex> filtration;
    filtration.push_back(SimplicialComplex::from_simplices({{apex}}));
    for (int j = 1; j <= n + 1; ++j)
        filtration.push_back(cone(base.filtration[static_cast<size_t>(j) - 1], apex));
    SimplicialComplex top = filtration.back();
    return detail::assemble(std::move(top), std::move(filtration));
}

inline StratifiedSpace cone_stratified(const SimplicialComplex& base)
{
    return cone_stratified(trivial_stratification(base));
}

/** Suspension of a stratified space; the two apexes become point strata. */
inline StratifiedSpace suspension_stratified(const StratifiedSpace& base)
{
    auto [a, b] = suspension_apexes(base.complex);
    int n = base.dim();
    std::vector<SimplicialComplex> filtration;
    filtration.push_back(SimplicialComplex::from_simplices({{a}, {b}}));
    for (int j = 1; j <= n + 1; ++j)
        filtration.push_back(suspension(base.filtration[static_cast<size_t>(j) - 1], a, b));
    SimplicialComplex top = filtration.back();
    return detail::assemble(std::move(top), std::move(filtration));
}

inline StratifiedSpace suspension_stratified(const SimplicialComplex& base)
{
    return suspension_stratified(trivial_stratification(base));
}

namespace detail {

/** Homology proxy for "closed manifold, possibly with boundary". */
inline bool looks_like_manifold(const SimplicialComplex& m);

}  // namespace detail

/**
 * Product of a manifold factor with a stratified space, stratified by
 * (stratum of the space) x (the whole manifold factor).
 */
inline StratifiedSpace product_stratified(const SimplicialComplex& manifold, const StratifiedSpace& space)
{
    if (!detail::looks_like_manifold(manifold))
        throw StrataError(Code::NOT_A_MANIFOLD, "product factor fails the manifold link test");
    ProductComplex pc = product_complex(manifold, space.complex);
    int m = manifold.dim();
    int n = space.dim();
    std::vector<SimplicialComplex> filtration(static_cast<size_t>(m + n) + 1);
    for (int k = 0; k < m; ++k)
        filtration[static_cast<size_t>(k)] = SimplicialComplex();
    for (int j = 0; j <= n; ++j) {
        std::set<Vertex> level_verts;
        for (Vertex v : space.filtration[static_cast<size_t>(j)].vertices())
            level_verts.insert(v);
        std::vector<Vertex> keep;
        for (const auto& [pair, id] : pc.vertex_ids)
            if (level_verts.count(pair.second))
                keep.push_back(id);
        filtration[static_cast<size_t>(m + j)] = pc.complex.induced(keep);
    }
    return detail::assemble(pc.complex, std::move(filtration));
}

/** One barycentric subdivision; filtration transported, strata rederived. */
inline StratifiedSpace repair_fullness(const StratifiedSpace& space)
{
    Subdivision sd = barycentric_subdivision(space.complex);
    int n = space.dim();
    std::vector<SimplicialComplex> filtration;
    for (int j = 0; j <= n; ++j) {
        std::vector<Vertex> keep;
        for (size_t i = 0; i < sd.original_cell.size(); ++i)
            if (space.filtration[static_cast<size_t>(j)].contains(sd.original_cell[i]))
                keep.push_back(static_cast<Vertex>(i));
        filtration.push_back(sd.complex.induced(keep));
    }
    return detail::assemble(sd.complex, std::move(filtration));
}

/** Geometric validation; structural defects throw at construction instead. */
inline ValidationReport validate_pseudomanifold(const StratifiedSpace& space)
{
    ValidationReport report;
    const SimplicialComplex& x = space.complex;
    int n = x.dim();

    if (!x.is_pure())
        report.problems.emplace_back(Code::DENSITY_VIOLATION,
                                     "complex is not pure: a maximal cell has dimension below "
                                         + std::to_string(n));

    // Border order: the closure of a stratum is a union of strata that sit
    // strictly lower in the filtration.
    for (const Stratum& s : space.strata) {
        for (const Stratum& t : space.strata) {
            if (t.id == s.id)
                continue;
            size_t inside = 0;
            for (const Simplex& c : t.open_cells)
                if (s.closure.contains(c))
                    ++inside;
            if (inside == 0)
                continue;
            if (inside < t.open_cells.size())
                report.problems.emplace_back(Code::BORDER_VIOLATION,
                                             "closure of stratum " + s.id + " meets stratum "
                                                 + t.id + " in a proper nonempty part");
            else if (t.level >= s.level)
                report.problems.emplace_back(Code::BORDER_VIOLATION,
                                             "closure of stratum " + s.id + " contains stratum "
                                                 + t.id + " of level "
                                                 + std::to_string(t.level) + " >= "
                                                 + std::to_string(s.level));
        }
    }

    std::set<Simplex> covered;
    for (const Stratum& s : space.strata) {
        if (s.singular && space.codim(s) <= 0)
            report.problems.emplace_back(Code::DENSITY_VIOLATION,
                                         "singular stratum " + s.id + " has full dimension");
        else if (s.singular && space.codim(s) == 1)
            report.problems.emplace_back(Code::CODIM1_STRATUM,
                                         "stratum " + s.id + " has codimension one");
        if (detail::face_components(s.open_cells).size() > 1)
            report.problems.emplace_back(Code::DISCONNECTED_STRATUM,
                                         "stratum " + s.id + " is not connected");
        if (s.singular) {
            SimplicialComplex full = x.induced(s.closure.vertices());
            if (!(full == s.closure))
                report.problems.emplace_back(Code::NOT_FULL,
                                             "closure of stratum " + s.id
                                                 + " is not a full subcomplex");
        }
        for (const Simplex& c : s.open_cells) {
            if (!covered.insert(c).second)
                report.problems.emplace_back(Code::BAD_INPUT,
                                             "strata overlap at cell " + simplex_to_string(c));
        }
    }
    if (static_cast<long long>(covered.size()) != x.total_cells())
        report.problems.emplace_back(Code::BAD_INPUT, "strata do not cover the complex");

    return report;
}

namespace detail {

inline bool looks_like_manifold(const SimplicialComplex& m)
{
    if (m.empty() || !m.is_pure())
        return false;
    int d = m.dim();
    if (d == 0)
        return true;
    for (Vertex v : m.vertices()) {
        SimplicialComplex lk = m.link({v});
        BettiTable b = homology_betti(lk);
        BettiTable sphere;
        if (d == 1) {
            sphere.set(0, 2);
        } else {
            sphere.set(0, 1);
            sphere.set(d - 1, sphere.at(d - 1) + 1);
        }
        BettiTable point;
        point.set(0, 1);
        if (!(b == sphere) && !(b == point))
            return false;
    }
    return true;
}

}  // namespace detail

}  // namespace strata
