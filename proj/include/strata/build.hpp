/**
 * Constructions on simplicial complexes: cones, suspensions, joins,
 * products (staircase triangulation), barycentric subdivision, and a few
 * standard small complexes.
 *
 * Fresh vertices are always assigned deterministically:
 *  - cone apex: (max vertex id) + 1; suspension apexes: max+1 and max+2;
 *  - product vertices: 0-based positions in the lexicographically ordered
 *    list of factor-vertex pairs;
 *  - subdivision vertices: 0-based positions of the original cells ordered
 *    by dimension then lexicographically.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "strata/complex.hpp"
#include "strata/core.hpp"

namespace strata {

inline Vertex max_vertex(const SimplicialComplex& k)
{
    Vertex m = -1;
    for (Vertex v : k.vertices())
        m = std::max(m, v);
    return m;
}

inline Vertex cone_apex(const SimplicialComplex& k) { return max_vertex(k) + 1; }

/** Cone over k with the given apex vertex (which must be fresh). */
inline SimplicialComplex cone(const SimplicialComplex& k, Vertex apex)
{
    std::vector<Simplex> gen;
    gen.push_back({apex});
    for (const Simplex& f : k.facets()) {
        if (std::binary_search(f.begin(), f.end(), apex))
            throw StrataError(Code::BAD_INPUT, "cone: apex already a vertex");
        Simplex c = f;
        c.push_back(apex);
        gen.push_back(make_simplex(c));
    }
    return SimplicialComplex::from_simplices(gen);
}

/** Cone over k with a fresh apex vertex. */
inline SimplicialComplex cone(const SimplicialComplex& k) { return cone(k, cone_apex(k)); }

inline std::pair<Vertex, Vertex> suspension_apexes(const SimplicialComplex& k)
{
    Vertex m = max_vertex(k);
    return {m + 1, m + 2};
}

/** Suspension of k with the given pair of fresh apex vertices. */
inline SimplicialComplex suspension(const SimplicialComplex& k, Vertex a, Vertex b)
{
    std::vector<Simplex> gen;
    gen.push_back({a});
    gen.push_back({b});
    for (const Simplex& f : k.facets()) {
        Simplex ca = f;
        ca.push_back(a);
        gen.push_back(make_simplex(ca));
        Simplex cb = f;
        cb.push_back(b);
        gen.push_back(make_simplex(cb));
    }
    return SimplicialComplex::from_simplices(gen);
}

/** Suspension of k: two fresh apexes coned over k. */
inline SimplicialComplex suspension(const SimplicialComplex& k)
{
    auto [a, b] = suspension_apexes(k);
    return suspension(k, a, b);
}

/** Join of two complexes on disjoint vertex sets. */
inline SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l)
{
    auto kv = k.vertices();
    auto lv = l.vertices();
    std::vector<Vertex> common;
    std::set_intersection(kv.begin(), kv.end(), lv.begin(), lv.end(), std::back_inserter(common));
    if (!common.empty())
        throw StrataError(Code::BAD_INPUT, "join: factors share vertex ids");
    std::vector<Simplex> gen;
    for (const Simplex& f : k.facets()) {
        for (const Simplex& g : l.facets()) {
            Simplex s = f;
            s.insert(s.end(), g.begin(), g.end());
            gen.push_back(make_simplex(s));
        }
    }
    return SimplicialComplex::from_simplices(gen);
}

/** Product triangulation together with its vertex-pair labelling. */
struct ProductComplex {
    SimplicialComplex complex;
    std::map<std::pair<Vertex, Vertex>, Vertex> vertex_ids;
};

/**
 * Staircase triangulation of |k| x |l|: each pair of facets contributes one
 * simplex per monotone lattice path through the grid of their vertices.
 */
inline ProductComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l)
{
    ProductComplex out;
    for (Vertex u : k.vertices())
        for (Vertex v : l.vertices())
            out.vertex_ids[{u, v}] = 0;
    Vertex next = 0;
    for (auto& [pair, id] : out.vertex_ids)
        id = next++;

    std::vector<Simplex> gen;
    std::vector<int> moves;  // 0 = advance in k-factor, 1 = advance in l-factor
    for (const Simplex& f : k.facets()) {
        for (const Simplex& g : l.facets()) {
            int p = static_cast<int>(f.size()) - 1;
            int q = static_cast<int>(g.size()) - 1;
            moves.assign(static_cast<size_t>(p), 0);
            moves.resize(static_cast<size_t>(p + q), 1);
            std::sort(moves.begin(), moves.end());
            do {
                Simplex cell;
                int i = 0, j = 0;
                cell.push_back(out.vertex_ids.at({f[0], g[0]}));
                for (int m : moves) {
                    if (m == 0)
                        ++i;
                    else
                        ++j;
                    cell.push_back(out.vertex_ids.at({f[static_cast<size_t>(i)], g[static_cast<size_t>(j)]}));
                }
                gen.push_back(make_simplex(cell));
            } while (std::next_permutation(moves.begin(), moves.end()));
        }
    }
    out.complex = SimplicialComplex::from_simplices(gen);
    return out;
}

inline SimplicialComplex product(const SimplicialComplex& k, const SimplicialComplex& l)
{
    return product_complex(k, l).complex;
}

/** Barycentric subdivision together with the cell each new vertex refines. */
struct Subdivision {
    SimplicialComplex complex;
    std::vector<Simplex> original_cell;  // indexed by subdivision vertex id
};

namespace detail {

/** Cells of k ordered by dimension then lexicographically (= vertex ids of sd k). */
inline std::vector<Simplex> cells_in_id_order(const SimplicialComplex& k)
{
    std::vector<Simplex> out;
    for (int d = 0; d <= k.dim(); ++d)
        for (const Simplex& s : k.cells(d))
            out.push_back(s);
    return out;
}

inline void emit_chains(const std::vector<std::vector<int>>& cofaces, std::vector<Vertex>& chain,
                        std::vector<Simplex>& out)
{
    out.push_back(chain);
    for (int next : cofaces[static_cast<size_t>(chain.back())]) {
        chain.push_back(next);
        emit_chains(cofaces, chain, out);
        chain.pop_back();
    }
}

/**
 * Full subcomplex of the barycentric subdivision spanned by the kept cells,
 * built by enumerating inclusion chains directly.
 */
inline SimplicialComplex chains_among(const std::vector<Simplex>& cells, const std::vector<bool>& kept)
{
    int n = static_cast<int>(cells.size());
    std::vector<std::vector<int>> cofaces(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (!kept[static_cast<size_t>(i)])
            continue;
        for (int j = i + 1; j < n; ++j) {
            if (!kept[static_cast<size_t>(j)])
                continue;
            if (cells[static_cast<size_t>(j)].size() > cells[static_cast<size_t>(i)].size()
                && std::includes(cells[static_cast<size_t>(j)].begin(), cells[static_cast<size_t>(j)].end(),
                                 cells[static_cast<size_t>(i)].begin(), cells[static_cast<size_t>(i)].end()))
                cofaces[static_cast<size_t>(i)].push_back(j);
        }
    }
    std::vector<Simplex> gen;
    std::vector<Vertex> chain;
    for (int i = 0; i < n; ++i) {
        if (!kept[static_cast<size_t>(i)])
            continue;
        chain.assign(1, i);
        emit_chains(cofaces, chain, gen);
    }
    return SimplicialComplex::from_simplices(gen);
}

}  // namespace detail

inline Subdivision barycentric_subdivision(const SimplicialComplex& k)
{
    Subdivision sd;
    sd.original_cell = detail::cells_in_id_order(k);
    std::vector<bool> all(sd.original_cell.size(), true);
    sd.complex = detail::chains_among(sd.original_cell, all);
    return sd;
}

/**
 * Full subcomplex of the barycentric subdivision on the cells selected by
 * `keep`, without materializing the rest of the subdivision.
 */
inline SimplicialComplex subdivision_restricted(const SimplicialComplex& k,
                                                const std::function<bool(const Simplex&)>& keep)
{
    std::vector<Simplex> cells = detail::cells_in_id_order(k);
    std::vector<bool> kept(cells.size());
    for (size_t i = 0; i < cells.size(); ++i)
        kept[i] = keep(cells[i]);
    return detail::chains_among(cells, kept);
}

/** Cycle graph on n >= 3 vertices 0..n-1 (a triangulated circle). */
inline SimplicialComplex cycle_complex(int n)
{
    if (n < 3)
        throw StrataError(Code::BAD_INPUT, "cycle_complex needs at least 3 vertices");
    std::vector<Simplex> gen;
    for (int i = 0; i < n; ++i)
        gen.push_back(make_simplex({i, (i + 1) % n}));
    return SimplicialComplex::from_simplices(gen);
}

/** A single edge on vertices {0, 1}. */
inline SimplicialComplex interval_complex()
{
    return SimplicialComplex::from_simplices({{0, 1}});
}

/** Full n-simplex on vertices 0..n. */
inline SimplicialComplex simplex_complex(int n)
{
    Simplex s(static_cast<size_t>(n) + 1);
    std::iota(s.begin(), s.end(), 0);
    return SimplicialComplex::from_simplices({s});
}

/** Boundary of the (n+1)-simplex: the minimal triangulated n-sphere. */
inline SimplicialComplex sphere_complex(int n)
{
    SimplicialComplex full = simplex_complex(n + 1);
    return full.skeleton(n);
}

/** Octahedron (boundary of the 3-dim cross-polytope); antipodes are i, i+3. */
inline SimplicialComplex octahedron()
{
    std::vector<Simplex> gen;
    for (int a : {0, 3})
        for (int b : {1, 4})
            for (int c : {2, 5})
                gen.push_back(make_simplex({a, b, c}));
    return SimplicialComplex::from_simplices(gen);
}

}  // namespace strata
