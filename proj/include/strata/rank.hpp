/**
 * Exact sparse linear algebra over the integers (ranks and kernels of
 * incidence-style matrices, hence ranks over the rationals).
 *
 * Elimination is fraction-free: columns are combined by cross-multiplication
 * (a*col - b*pivot) and renormalized by their content (gcd), so no rational
 * arithmetic ever appears and entries stay near the size of the minors they
 * represent.  Pivoting is deterministic: the sparsest active column first,
 * preferring unit entries inside it, so runs are reproducible bit for bit.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <utility>
#include <vector>

#include "strata/core.hpp"

namespace strata {

using Int = boost::multiprecision::cpp_int;

/** Sparse integer matrix in column-major form, rows sorted inside columns. */
struct SparseIntMatrix {
    int rows = 0;
    std::vector<std::vector<std::pair<int, Int>>> columns;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), columns(static_cast<size_t>(c)) {}

    int cols() const { return static_cast<int>(columns.size()); }

    /** Append an entry; rows must be added in increasing order per column. */
    void push(int row, int col, Int value)
    {
        if (value == 0)
            return;
        auto& column = columns[static_cast<size_t>(col)];
        if (!column.empty() && column.back().first >= row)
            throw StrataError(Code::BAD_INPUT, "matrix rows must be pushed in order");
        column.emplace_back(row, std::move(value));
    }

    /** Horizontal concatenation [a | b]. */
    static SparseIntMatrix hstack(const SparseIntMatrix& a, const SparseIntMatrix& b)
    {
        if (a.rows != b.rows)
            throw StrataError(Code::BAD_INPUT, "hstack: row mismatch");
        SparseIntMatrix r(a.rows, a.cols() + b.cols());
        for (int j = 0; j < a.cols(); ++j)
            r.columns[static_cast<size_t>(j)] = a.columns[static_cast<size_t>(j)];
        for (int j = 0; j < b.cols(); ++j)
            r.columns[static_cast<size_t>(a.cols() + j)] = b.columns[static_cast<size_t>(j)];
        return r;
    }

    /** Product a*b (columns of b give integer combinations of a's columns). */
    static SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b)
    {
        if (a.cols() != b.rows)
            throw StrataError(Code::BAD_INPUT, "multiply: shape mismatch");
        SparseIntMatrix r(a.rows, b.cols());
        std::vector<Int> acc(static_cast<size_t>(a.rows));
        std::vector<int> touched;
        for (int j = 0; j < b.cols(); ++j) {
            touched.clear();
            for (const auto& [k, coef] : b.columns[static_cast<size_t>(j)]) {
                for (const auto& [row, v] : a.columns[static_cast<size_t>(k)]) {
                    if (acc[static_cast<size_t>(row)] == 0)
                        touched.push_back(row);
                    acc[static_cast<size_t>(row)] += coef * v;
                }
            }
            std::sort(touched.begin(), touched.end());
            for (int row : touched) {
                if (acc[static_cast<size_t>(row)] != 0)
                    r.columns[static_cast<size_t>(j)].emplace_back(row, acc[static_cast<size_t>(row)]);
                acc[static_cast<size_t>(row)] = 0;
            }
        }
        return r;
    }
};

namespace detail {

using Column = std::vector<std::pair<int, Int>>;

/** result = a*x + b*y, merged by row; zero entries dropped. */
inline Column column_combine(const Int& a, const Column& x, const Int& b, const Column& y)
{
    Column out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (i >= x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, b * y[j].second);
            ++j;
        } else {
            Int v = a * x[i].second + b * y[j].second;
            if (v != 0)
                out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

/** Divide a pair of parallel columns by their common content; fix the sign. */
inline void normalize_content(Column& m, Column& shadow)
{
    Int g = 0;
    for (const auto& [r, v] : m)
        g = boost::multiprecision::gcd(g, v);
    for (const auto& [r, v] : shadow)
        g = boost::multiprecision::gcd(g, v);
    if (g == 0)
        return;
    int sign = 1;
    if (!m.empty())
        sign = m.front().second < 0 ? -1 : 1;
    else if (!shadow.empty())
        sign = shadow.front().second < 0 ? -1 : 1;
    if (sign < 0)
        g = -g;
    if (g == 1)
        return;
    for (auto& [r, v] : m)
        v /= g;
    for (auto& [r, v] : shadow)
        v /= g;
}

inline const Int* column_value_at(const Column& c, int row)
{
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const std::pair<int, Int>& e, int r) { return e.first < r; });
    if (it == c.end() || it->first != row)
        return nullptr;
    return &it->second;
}

/**
 * Shared elimination core.  Reduces the matrix in place; when `want_kernel`
 * is set, maintains shadow columns so that (original matrix) * shadow_j
 * equals the current column j throughout, which turns zeroed columns into
 * integer kernel vectors.
 */
struct Eliminator {
    explicit Eliminator(SparseIntMatrix m, bool want_kernel) : mat(std::move(m))
    {
        int n = mat.cols();
        alive.assign(static_cast<size_t>(n), true);
        if (want_kernel) {
            shadows.resize(static_cast<size_t>(n));
            for (int j = 0; j < n; ++j)
                shadows[static_cast<size_t>(j)].emplace_back(j, Int(1));
        } else {
            shadows.resize(static_cast<size_t>(n));
        }
        row_cols.assign(static_cast<size_t>(std::max(mat.rows, 1)), {});
        for (int j = 0; j < n; ++j)
            for (const auto& [r, v] : mat.columns[static_cast<size_t>(j)])
                row_cols[static_cast<size_t>(r)].push_back(j);
    }

    int run()
    {
        int rank = 0;
        while (true) {
            int pc = pick_pivot_column();
            if (pc < 0)
                break;
            auto [pr, pv] = pick_pivot_entry(pc);
            eliminate(pr, pc, pv);
            alive[static_cast<size_t>(pc)] = false;
            ++rank;
        }
        return rank;
    }

    SparseIntMatrix mat;
    std::vector<Column> shadows;
    std::vector<bool> alive;
    std::vector<std::vector<int>> row_cols;  // lazy: may hold stale entries

private:
    int pick_pivot_column() const
    {
        int best = -1;
        size_t best_n = 0;
        for (int j = 0; j < mat.cols(); ++j) {
            if (!alive[static_cast<size_t>(j)])
                continue;
            size_t n = mat.columns[static_cast<size_t>(j)].size();
            if (n == 0)
                continue;
            if (best < 0 || n < best_n) {
                best = j;
                best_n = n;
            }
        }
        return best;
    }

    std::pair<int, Int> pick_pivot_entry(int pc) const
    {
        const Column& c = mat.columns[static_cast<size_t>(pc)];
        const std::pair<int, Int>* best = nullptr;
        for (const auto& e : c) {
            if (!best || boost::multiprecision::abs(e.second) < boost::multiprecision::abs(best->second))
                best = &e;
        }
        return {best->first, best->second};
    }

    void eliminate(int pr, int pc, const Int& pv)
    {
        // Work from a copy of the adjacency list: updates push new entries.
        std::vector<int> cols_here = row_cols[static_cast<size_t>(pr)];
        std::sort(cols_here.begin(), cols_here.end());
        cols_here.erase(std::unique(cols_here.begin(), cols_here.end()), cols_here.end());
        for (int j : cols_here) {
            if (j == pc || !alive[static_cast<size_t>(j)])
                continue;
            Column& cj = mat.columns[static_cast<size_t>(j)];
            const Int* v = column_value_at(cj, pr);
            if (!v)
                continue;  // stale adjacency entry
            Int b = -*v;
            cj = column_combine(pv, cj, b, mat.columns[static_cast<size_t>(pc)]);
            shadows[static_cast<size_t>(j)] =
                column_combine(pv, shadows[static_cast<size_t>(j)], b, shadows[static_cast<size_t>(pc)]);
            normalize_content(cj, shadows[static_cast<size_t>(j)]);
            for (const auto& [r, val] : cj)
                row_cols[static_cast<size_t>(r)].push_back(j);
        }
    }
};

}  // namespace detail

/** Rank of the matrix over the rationals. */
inline long long sparse_rank(const SparseIntMatrix& m)
{
    detail::Eliminator e(m, /*want_kernel=*/false);
    return e.run();
}

/**
 * Integer basis of the rational kernel, one column per basis vector,
 * deterministic across runs.
 */
inline SparseIntMatrix sparse_kernel(const SparseIntMatrix& m)
{
    detail::Eliminator e(m, /*want_kernel=*/true);
    e.run();
    SparseIntMatrix k(m.cols(), 0);
    for (int j = 0; j < m.cols(); ++j) {
        if (e.mat.columns[static_cast<size_t>(j)].empty()) {
            k.columns.push_back(std::move(e.shadows[static_cast<size_t>(j)]));
        }
    }
    return k;
}

}  // namespace strata
