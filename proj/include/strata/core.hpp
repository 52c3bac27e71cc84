/**
 * Core vocabulary for the strata library: vertices, simplices, graded
 * dimension tables, and the error taxonomy shared by every module.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

/** Vertex identifier.  Complexes may use any non-negative ids. */
using Vertex = int;

/**
 * A simplex is a strictly increasing list of vertex ids.  The empty list is
 * not a simplex; use explicit emptiness of containers instead.
 */
using Simplex = std::vector<Vertex>;

/** Sort and deduplicate a vertex list into canonical simplex form. */
inline Simplex make_simplex(Simplex vertices)
{
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

/** Dimension of a simplex (#vertices - 1). */
inline int simplex_dim(const Simplex& s)
{
    return static_cast<int>(s.size()) - 1;
}

/** Render a simplex as "{v0 v1 ...}" for messages and reports. */
inline std::string simplex_to_string(const Simplex& s)
{
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < s.size(); ++i) {
        if (i)
            os << ' ';
        os << s[i];
    }
    os << '}';
    return os.str();
}

/** Error codes.  Validation findings reuse the same vocabulary. */
enum class Code {
    OK,
    // validation findings
    DENSITY_VIOLATION,
    CODIM1_STRATUM,
    BORDER_VIOLATION,
    NOT_FULL,
    DISCONNECTED_STRATUM,
    // hard errors
    MISSING_SIMPLEX,
    SPACE_MISMATCH,
    INVALID_LINK,
    NOT_A_MANIFOLD,
    INVALID_SPACE,
    NOT_NESTED,
    UNRESOLVED_EULER_FLAG,
    PERVERSE_PRESENT,
    NO_CLOSED_FORM,
    NOT_PERVERSE,
    UNRESOLVED_LINK,
    NONEXCEPTIONAL,
    BAD_INPUT,
};

inline const char* code_name(Code c)
{
    switch (c) {
        case Code::OK: return "OK";
        case Code::DENSITY_VIOLATION: return "DENSITY_VIOLATION";
        case Code::CODIM1_STRATUM: return "CODIM1_STRATUM";
        case Code::BORDER_VIOLATION: return "BORDER_VIOLATION";
        case Code::NOT_FULL: return "NOT_FULL";
        case Code::DISCONNECTED_STRATUM: return "DISCONNECTED_STRATUM";
        case Code::MISSING_SIMPLEX: return "MISSING_SIMPLEX";
        case Code::SPACE_MISMATCH: return "SPACE_MISMATCH";
        case Code::INVALID_LINK: return "INVALID_LINK";
        case Code::NOT_A_MANIFOLD: return "NOT_A_MANIFOLD";
        case Code::INVALID_SPACE: return "INVALID_SPACE";
        case Code::NOT_NESTED: return "NOT_NESTED";
        case Code::UNRESOLVED_EULER_FLAG: return "UNRESOLVED_EULER_FLAG";
        case Code::PERVERSE_PRESENT: return "PERVERSE_PRESENT";
        case Code::NO_CLOSED_FORM: return "NO_CLOSED_FORM";
        case Code::NOT_PERVERSE: return "NOT_PERVERSE";
        case Code::UNRESOLVED_LINK: return "UNRESOLVED_LINK";
        case Code::NONEXCEPTIONAL: return "NONEXCEPTIONAL";
        case Code::BAD_INPUT: return "BAD_INPUT";
    }
    return "UNKNOWN";
}

/** Exception carrying one of the error codes above. */
class StrataError : public std::runtime_error {
public:
    StrataError(Code code, const std::string& detail)
        : std::runtime_error(std::string(code_name(code)) + ": " + detail),
          code_(code)
    {
    }

    Code code() const { return code_; }

private:
    Code code_;
};

/**
 * Graded dimension table indexed from degree 0.  Degrees past the stored
 * range read as 0, so tables of different lengths compare and combine
 * naturally.
 */
struct BettiTable {
    std::vector<long long> counts;

    BettiTable() = default;
    explicit BettiTable(std::vector<long long> c) : counts(std::move(c)) {}

    /** Entry in the given degree; 0 outside the stored range. */
    long long at(int degree) const
    {
        if (degree < 0 || degree >= static_cast<int>(counts.size()))
            return 0;
        return counts[static_cast<size_t>(degree)];
    }

    void set(int degree, long long value)
    {
        if (degree < 0)
            throw StrataError(Code::BAD_INPUT, "negative degree in table");
        if (degree >= static_cast<int>(counts.size()))
            counts.resize(static_cast<size_t>(degree) + 1, 0);
        counts[static_cast<size_t>(degree)] = value;
    }

    int top_degree() const
    {
        for (int i = static_cast<int>(counts.size()) - 1; i >= 0; --i)
            if (counts[static_cast<size_t>(i)] != 0)
                return i;
        return -1;
    }

    /** Alternating sum of the entries. */
    long long euler() const
    {
        long long chi = 0;
        int sign = 1;
        for (long long c : counts) {
            chi += sign * c;
            sign = -sign;
        }
        return chi;
    }

    /** Truncate/extend the stored range to exactly n entries. */
    BettiTable resized(size_t n) const
    {
        BettiTable t = *this;
        t.counts.resize(n, 0);
        return t;
    }

    /** Entrywise sum. */
    friend BettiTable operator+(const BettiTable& a, const BettiTable& b)
    {
        BettiTable r;
        size_t n = std::max(a.counts.size(), b.counts.size());
        r.counts.resize(n, 0);
        for (size_t i = 0; i < n; ++i)
            r.counts[i] = a.at(static_cast<int>(i)) + b.at(static_cast<int>(i));
        return r;
    }

    /** Graded convolution (the Kuenneth pattern at dimension level). */
    friend BettiTable convolve(const BettiTable& a, const BettiTable& b)
    {
        BettiTable r;
        if (a.counts.empty() || b.counts.empty())
            return r;
        r.counts.assign(a.counts.size() + b.counts.size() - 1, 0);
        for (size_t i = 0; i < a.counts.size(); ++i)
            for (size_t j = 0; j < b.counts.size(); ++j)
                r.counts[i + j] += a.counts[i] * b.counts[j];
        return r;
    }

    /** Equality ignoring trailing zeros. */
    friend bool operator==(const BettiTable& a, const BettiTable& b)
    {
        size_t n = std::max(a.counts.size(), b.counts.size());
        for (size_t i = 0; i < n; ++i)
            if (a.at(static_cast<int>(i)) != b.at(static_cast<int>(i)))
                return false;
        return true;
    }

    friend bool operator!=(const BettiTable& a, const BettiTable& b) { return !(a == b); }

    std::string to_string() const
    {
        std::ostringstream os;
        os << '(';
        for (size_t i = 0; i < counts.size(); ++i) {
            if (i)
                os << ", ";
            os << counts[i];
        }
        os << ')';
        return os.str();
    }
};

}  // namespace strata
