/**
 * Finite abstract simplicial complexes with deterministic cell ordering.
 *
 * A complex is stored closed under taking faces, with the cells of each
 * dimension kept sorted lexicographically.  All downstream indexing (chain
 * groups, boundary matrices) refers to positions in these sorted lists, so
 * identical inputs always produce identical matrices.
 */
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "strata/core.hpp"
#include "strata/rank.hpp"

namespace strata {

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /** Build the closure of the given generating simplices. */
    static SimplicialComplex from_simplices(const std::vector<Simplex>& generators)
    {
        std::set<Simplex> closed;
        for (const Simplex& g : generators)
            insert_with_faces(closed, make_simplex(g));
        SimplicialComplex c;
        for (const Simplex& s : closed) {
            int d = simplex_dim(s);
            if (d >= static_cast<int>(c.cells_.size()))
                c.cells_.resize(static_cast<size_t>(d) + 1);
            c.cells_[static_cast<size_t>(d)].push_back(s);
        }
        for (auto& level : c.cells_)
            std::sort(level.begin(), level.end());
        return c;
    }

    bool empty() const { return cells_.empty(); }

    /** Dimension of the complex (-1 when empty). */
    int dim() const { return static_cast<int>(cells_.size()) - 1; }

    const std::vector<Simplex>& cells(int d) const
    {
        static const std::vector<Simplex> none;
        if (d < 0 || d > dim())
            return none;
        return cells_[static_cast<size_t>(d)];
    }

    long long cell_count(int d) const { return static_cast<long long>(cells(d).size()); }

    long long total_cells() const
    {
        long long n = 0;
        for (const auto& level : cells_)
            n += static_cast<long long>(level.size());
        return n;
    }

    std::vector<Vertex> vertices() const
    {
        std::vector<Vertex> v;
        for (const Simplex& s : cells(0))
            v.push_back(s[0]);
        return v;
    }

    bool contains(const Simplex& s) const { return index_of(s) >= 0; }

    /** Position of s in cells(dim s), or -1. */
    int index_of(const Simplex& s) const
    {
        int d = simplex_dim(s);
        if (d < 0 || d > dim())
            return -1;
        const auto& level = cells_[static_cast<size_t>(d)];
        auto it = std::lower_bound(level.begin(), level.end(), s);
        if (it == level.end() || *it != s)
            return -1;
        return static_cast<int>(it - level.begin());
    }

    /** Maximal cells, in dimension-then-lexicographic order. */
    std::vector<Simplex> facets() const
    {
        std::vector<Simplex> out;
        for (int d = 0; d <= dim(); ++d) {
            std::vector<bool> covered = coface_marks(d);
            const auto& level = cells(d);
            for (size_t i = 0; i < level.size(); ++i)
                if (!covered[i])
                    out.push_back(level[i]);
        }
        return out;
    }

    /** True when every maximal cell has top dimension. */
    bool is_pure() const
    {
        for (int d = 0; d < dim(); ++d) {
            std::vector<bool> covered = coface_marks(d);
            if (std::find(covered.begin(), covered.end(), false) != covered.end())
                return false;
        }
        return true;
    }

    /** Subcomplex of cells of dimension at most k. */
    SimplicialComplex skeleton(int k) const
    {
        std::vector<Simplex> gen;
        for (int d = 0; d <= std::min(k, dim()); ++d)
            for (const Simplex& s : cells(d))
                gen.push_back(s);
        return from_simplices(gen);
    }

    /** Full (induced) subcomplex on a vertex subset. */
    SimplicialComplex induced(const std::vector<Vertex>& verts) const
    {
        std::set<Vertex> keep(verts.begin(), verts.end());
        std::vector<Simplex> gen;
        for (int d = 0; d <= dim(); ++d) {
            for (const Simplex& s : cells(d)) {
                if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return keep.count(v) > 0; }))
                    gen.push_back(s);
            }
        }
        return from_simplices(gen);
    }

    /** Link of a simplex: all tau disjoint from s with tau+s a cell. */
    SimplicialComplex link(const Simplex& s_in) const
    {
        Simplex s = make_simplex(s_in);
        std::vector<Simplex> gen;
        for (int d = simplex_dim(s); d <= dim(); ++d) {
            for (const Simplex& c : cells(d)) {
                if (!std::includes(c.begin(), c.end(), s.begin(), s.end()))
                    continue;
                Simplex tau;
                std::set_difference(c.begin(), c.end(), s.begin(), s.end(), std::back_inserter(tau));
                if (!tau.empty())
                    gen.push_back(tau);
            }
        }
        return from_simplices(gen);
    }

    /** Number of connected components of the 1-skeleton. */
    int component_count() const
    {
        const auto& verts = cells(0);
        int n = static_cast<int>(verts.size());
        if (n == 0)
            return 0;
        std::vector<int> parent(static_cast<size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x) {
                parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
                x = parent[static_cast<size_t>(x)];
            }
            return x;
        };
        for (const Simplex& e : cells(1)) {
            int a = find(index_of({e[0]}));
            int b = find(index_of({e[1]}));
            if (a != b)
                parent[static_cast<size_t>(a)] = b;
        }
        std::set<int> roots;
        for (int v = 0; v < n; ++v)
            roots.insert(find(v));
        return static_cast<int>(roots.size());
    }

    bool is_connected() const { return component_count() == 1; }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int d = 0; d <= dim(); ++d)
            chi += (d % 2 == 0 ? 1 : -1) * cell_count(d);
        return chi;
    }

    /**
     * Boundary matrix of the simplicial chain complex in degree d,
     * rows indexed by cells(d-1), columns by cells(d).
     */
    SparseIntMatrix boundary_matrix(int d) const
    {
        SparseIntMatrix m(static_cast<int>(cell_count(d - 1)), static_cast<int>(cell_count(d)));
        if (d <= 0 || d > dim())
            return m;
        const auto& level = cells_[static_cast<size_t>(d)];
        std::vector<std::pair<int, Int>> entries;
        for (size_t j = 0; j < level.size(); ++j) {
            const Simplex& s = level[j];
            entries.clear();
            for (size_t i = 0; i < s.size(); ++i) {
                Simplex face;
                face.reserve(s.size() - 1);
                for (size_t k = 0; k < s.size(); ++k)
                    if (k != i)
                        face.push_back(s[k]);
                entries.emplace_back(index_of(face), Int(i % 2 == 0 ? 1 : -1));
            }
            std::sort(entries.begin(), entries.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& [row, v] : entries)
                m.push(row, static_cast<int>(j), std::move(v));
        }
        return m;
    }

    bool operator==(const SimplicialComplex& other) const { return cells_ == other.cells_; }

private:
    static void insert_with_faces(std::set<Simplex>& closed, const Simplex& s)
    {
        if (s.empty() || closed.count(s))
            return;
        closed.insert(s);
        if (s.size() == 1)
            return;
        for (size_t i = 0; i < s.size(); ++i) {
            Simplex face;
            face.reserve(s.size() - 1);
            for (size_t k = 0; k < s.size(); ++k)
                if (k != i)
                    face.push_back(s[k]);
            insert_with_faces(closed, face);
        }
    }

    /** For each d-cell: does it appear as a face of some (d+1)-cell? */
    std::vector<bool> coface_marks(int d) const
    {
        std::vector<bool> covered(cells(d).size(), false);
        for (const Simplex& c : cells(d + 1)) {
            for (size_t i = 0; i < c.size(); ++i) {
                Simplex face;
                face.reserve(c.size() - 1);
                for (size_t k = 0; k < c.size(); ++k)
                    if (k != i)
                        face.push_back(c[k]);
                covered[static_cast<size_t>(index_of(face))] = true;
            }
        }
        return covered;
    }

    std::vector<std::vector<Simplex>> cells_;
};

/** Free-function spelling of SimplicialComplex::link. */
inline SimplicialComplex link_of_simplex(const SimplicialComplex& complex, const Simplex& s)
{
    return complex.link(s);
}

}  // namespace strata
