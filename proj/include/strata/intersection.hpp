/**
 * Intersection homology of stratified simplicial pseudomanifolds.
 *
 * All chains live in the relative complex Q = C(X)/C(Sigma), whose basis in
 * each degree consists of the simplices not contained in the singular set;
 * the induced boundary simply drops faces inside Sigma.  For a chain
 * perversity p the allowable simplices A_i are those sigma with
 *
 *     dim(sigma meet cl S)  <=  i - codim(S) + p(S)
 *
 * for every singular stratum S met by sigma (the intersection dimension is
 * read off from the vertices of sigma lying in the closure, which is why
 * closures must be full subcomplexes).  The intersection chain groups are
 *
 *     I_i = { xi in span A_i : the non-allowable component of d(xi) is 0 },
 *
 * and all reported numbers are graded dimensions of the homology of I.
 * Ranks reduce to four families per degree: r_i (the full boundary rank on
 * allowable columns) and s_i (its block of rows at non-allowable cells),
 * giving  b_i = |A_i| - r_i - r_{i+1} + s_{i+1}.
 *
 * Perversities are taken in the complementary (codimension - 2 - p) sense:
 * the public entry points accept the geometric perversity qbar and convert,
 * so qbar below zero degenerates to relative homology of (X, Sigma) and
 * qbar above the top perversity to the homology of the regular part.
 */
#pragma once

#include <algorithm>
#include <vector>

#include "strata/build.hpp"
#include "strata/complex.hpp"
#include "strata/core.hpp"
#include "strata/homology.hpp"
#include "strata/perversity.hpp"
#include "strata/rank.hpp"
#include "strata/stratify.hpp"

namespace strata {

/** Chain perversity complementary to qbar: codim(S) - 2 - qbar(S). */
inline Perversity complementary(const StratifiedSpace& sp, const Perversity& qbar)
{
    return Perversity::top(sp) - qbar;
}

/** Per-degree basis of Q = C(X)/C(Sigma) with its induced boundary. */
class RelativeChains {
public:
    explicit RelativeChains(const StratifiedSpace& sp) : space_(&sp)
    {
        int n = sp.dim();
        cells_.resize(static_cast<size_t>(n) + 1);
        for (int d = 0; d <= n; ++d)
            for (const Simplex& s : sp.complex.cells(d))
                if (!sp.sigma.contains(s))
                    cells_[static_cast<size_t>(d)].push_back(s);
    }

    const StratifiedSpace& space() const { return *space_; }

    int dim() const { return static_cast<int>(cells_.size()) - 1; }

    const std::vector<Simplex>& cells(int d) const
    {
        static const std::vector<Simplex> none;
        if (d < 0 || d > dim())
            return none;
        return cells_[static_cast<size_t>(d)];
    }

    long long cell_count(int d) const { return static_cast<long long>(cells(d).size()); }

    int index_of(int d, const Simplex& s) const
    {
        const auto& level = cells(d);
        auto it = std::lower_bound(level.begin(), level.end(), s);
        if (it == level.end() || *it != s)
            return -1;
        return static_cast<int>(it - level.begin());
    }

    /** Boundary Q_d -> Q_{d-1}: faces inside Sigma are dropped. */
    SparseIntMatrix boundary(int d) const
    {
        SparseIntMatrix m(static_cast<int>(cell_count(d - 1)), static_cast<int>(cell_count(d)));
        const auto& level = cells(d);
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
                int row = index_of(d - 1, face);
                if (row < 0)
                    continue;  // face lies in Sigma
                entries.emplace_back(row, Int(i % 2 == 0 ? 1 : -1));
            }
            std::sort(entries.begin(), entries.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            for (auto& [row, v] : entries)
                m.push(row, static_cast<int>(j), std::move(v));
        }
        return m;
    }

private:
    const StratifiedSpace* space_;
    std::vector<std::vector<Simplex>> cells_;
};

/**
 * The allowable filtration of the relative chains for one chain perversity,
 * with the boundary ranks needed for graded dimensions.
 */
class AllowableComplex {
public:
    AllowableComplex(const RelativeChains& q, const Perversity& chain_p) : q_(&q)
    {
        const StratifiedSpace& sp = q.space();
        struct Constraint {
            std::vector<Vertex> closure_vertices;
            int codim;
            int p;
        };
        std::vector<Constraint> constraints;
        for (const Stratum* s : sp.singular_strata())
            constraints.push_back({s->closure.vertices(), sp.codim(*s), chain_p.at(s->id)});

        int n = q.dim();
        allowable_.resize(static_cast<size_t>(n) + 1);
        excluded_.resize(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const auto& level = q.cells(i);
            for (size_t j = 0; j < level.size(); ++j) {
                const Simplex& s = level[j];
                bool ok = true;
                for (const Constraint& c : constraints) {
                    std::vector<Vertex> meet;
                    std::set_intersection(s.begin(), s.end(), c.closure_vertices.begin(),
                                          c.closure_vertices.end(), std::back_inserter(meet));
                    if (meet.empty())
                        continue;
                    if (static_cast<int>(meet.size()) - 1 > i - c.codim + c.p) {
                        ok = false;
                        break;
                    }
                }
                (ok ? allowable_ : excluded_)[static_cast<size_t>(i)].push_back(static_cast<int>(j));
            }
        }

        r_.assign(static_cast<size_t>(n) + 2, 0);
        s_.assign(static_cast<size_t>(n) + 2, 0);
        for (int i = 0; i <= n; ++i) {
            SparseIntMatrix full = allowable_boundary(i);
            r_[static_cast<size_t>(i)] = sparse_rank(full);
            s_[static_cast<size_t>(i)] = sparse_rank(excluded_rows(full, i - 1));
        }
    }

    const RelativeChains& chains() const { return *q_; }

    const std::vector<int>& allowable_indices(int i) const
    {
        static const std::vector<int> none;
        if (i < 0 || i > q_->dim())
            return none;
        return allowable_[static_cast<size_t>(i)];
    }

    const std::vector<int>& excluded_indices(int i) const
    {
        static const std::vector<int> none;
        if (i < 0 || i > q_->dim())
            return none;
        return excluded_[static_cast<size_t>(i)];
    }

    long long allowable_count(int i) const
    {
        return static_cast<long long>(allowable_indices(i).size());
    }

    /** r_i: rank of the boundary restricted to allowable columns. */
    long long rank_full(int i) const
    {
        if (i < 0 || i > q_->dim())
            return 0;
        return r_[static_cast<size_t>(i)];
    }

    /** s_i: rank of its rows at non-allowable cells. */
    long long rank_excluded(int i) const
    {
        if (i < 0 || i > q_->dim())
            return 0;
        return s_[static_cast<size_t>(i)];
    }

    /** Columns of the relative boundary at the allowable i-simplices. */
    SparseIntMatrix allowable_boundary(int i) const
    {
        SparseIntMatrix d = q_->boundary(i);
        SparseIntMatrix m(d.rows, static_cast<int>(allowable_indices(i).size()));
        int j = 0;
        for (int col : allowable_indices(i))
            m.columns[static_cast<size_t>(j++)] = std::move(d.columns[static_cast<size_t>(col)]);
        return m;
    }

    /**
     * Integer basis of I_i = ker(non-allowable rows of the boundary),
     * written in ambient Q_i coordinates.
     */
    SparseIntMatrix intermediate_kernel(int i) const
    {
        SparseIntMatrix block = excluded_rows(allowable_boundary(i), i - 1);
        SparseIntMatrix k = sparse_kernel(block);
        const std::vector<int>& lift = allowable_indices(i);
        SparseIntMatrix out(static_cast<int>(q_->cell_count(i)), k.cols());
        for (int j = 0; j < k.cols(); ++j) {
            auto& col = out.columns[static_cast<size_t>(j)];
            for (const auto& [row, v] : k.columns[static_cast<size_t>(j)])
                col.emplace_back(lift[static_cast<size_t>(row)], v);
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
        return out;
    }

    BettiTable betti() const
    {
        BettiTable b;
        int n = q_->dim();
        for (int i = 0; i <= n; ++i)
            b.set(i, allowable_count(i) - rank_full(i) - rank_full(i + 1) + rank_excluded(i + 1));
        return b;
    }

private:
    /** Restrict rows of m (indexed by Q_d cells) to the non-allowable ones. */
    SparseIntMatrix excluded_rows(const SparseIntMatrix& m, int d) const
    {
        const std::vector<int>& rows = excluded_indices(d);
        std::vector<int> where(static_cast<size_t>(q_->cell_count(d)), -1);
        for (size_t k = 0; k < rows.size(); ++k)
            where[static_cast<size_t>(rows[k])] = static_cast<int>(k);
        SparseIntMatrix out(static_cast<int>(rows.size()), m.cols());
        for (int j = 0; j < m.cols(); ++j) {
            for (const auto& [row, v] : m.columns[static_cast<size_t>(j)]) {
                int r = where[static_cast<size_t>(row)];
                if (r >= 0)
                    out.columns[static_cast<size_t>(j)].emplace_back(r, v);
            }
        }
        return out;
    }

    const RelativeChains* q_;
    std::vector<std::vector<int>> allowable_;
    std::vector<std::vector<int>> excluded_;
    std::vector<long long> r_;
    std::vector<long long> s_;
};

/** Intersection homology dimensions for the perversity qbar. */
inline BettiTable ih_betti(const StratifiedSpace& sp, const Perversity& qbar)
{
    RelativeChains q(sp);
    AllowableComplex a(q, complementary(sp, qbar));
    return a.betti();
}

/** Homology dimensions of the pair (X, Sigma). */
inline BettiTable relative_betti(const StratifiedSpace& sp)
{
    RelativeChains q(sp);
    BettiTable b;
    int n = q.dim();
    std::vector<long long> rank(static_cast<size_t>(n) + 2, 0);
    for (int d = 1; d <= n; ++d)
        rank[static_cast<size_t>(d)] = sparse_rank(q.boundary(d));
    for (int d = 0; d <= n; ++d)
        b.set(d, q.cell_count(d) - rank[static_cast<size_t>(d)] - rank[static_cast<size_t>(d) + 1]);
    return b;
}

/**
 * Homology dimensions of the regular part X - Sigma, computed on the full
 * subcomplex of the barycentric subdivision away from Sigma.
 */
inline BettiTable regular_part_betti(const StratifiedSpace& sp)
{
    SimplicialComplex away =
        subdivision_restricted(sp.complex, [&](const Simplex& s) { return !sp.sigma.contains(s); });
    return homology_betti(away);
}

/**
 * Graded dimensions of the homology of the quotient of the intersection
 * chain complexes between two nested perversities (lower <= upper), shifted
 * down one degree: entry i reports degree i+1 of the quotient.  Degree 0 of
 * the quotient always vanishes because the complexes share their chains in
 * low intersection dimensions.
 */
inline BettiTable step_ih_betti(const StratifiedSpace& sp, const Perversity& lower,
                                const Perversity& upper)
{
    if (!leq(lower, upper))
        throw StrataError(Code::NOT_NESTED, "step requires lower <= upper pointwise");
    RelativeChains q(sp);
    AllowableComplex big(q, complementary(sp, lower));
    AllowableComplex small(q, complementary(sp, upper));

    int n = q.dim();
    std::vector<SparseIntMatrix> k_big(static_cast<size_t>(n) + 1);
    std::vector<SparseIntMatrix> k_small(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        k_big[static_cast<size_t>(i)] = big.intermediate_kernel(i);
        k_small[static_cast<size_t>(i)] = small.intermediate_kernel(i);
    }

    // rho_i = rank of the degree-i quotient boundary, computed as the rank
    // of d(K_big_i) modulo the span of K_small_{i-1}.
    std::vector<long long> rho(static_cast<size_t>(n) + 2, 0);
    for (int i = 1; i <= n; ++i) {
        SparseIntMatrix image = SparseIntMatrix::multiply(q.boundary(i), k_big[static_cast<size_t>(i)]);
        const SparseIntMatrix& w = k_small[static_cast<size_t>(i) - 1];
        rho[static_cast<size_t>(i)] = sparse_rank(SparseIntMatrix::hstack(image, w)) - w.cols();
    }

    BettiTable st;
    if (n >= 1)
        st.set(n - 1, 0);
    for (int i = 1; i <= n; ++i) {
        long long v = k_big[static_cast<size_t>(i)].cols() - k_small[static_cast<size_t>(i)].cols();
        st.set(i - 1, v - rho[static_cast<size_t>(i)] - rho[static_cast<size_t>(i) + 1]);
    }
    return st;
}

}  // namespace strata
