/**
 * Rank arithmetic of long exact sequences of finite-dimensional spaces.
 *
 * For a candidate exact sequence 0 -> T_1 -> T_2 -> ... -> T_m -> 0 the
 * ranks of the arrows are forced: a_j = dim T_j - a_{j-1}.  The dimension
 * data is feasible iff every forced rank is non-negative and the last one
 * vanishes; the first violated term is reported by its 1-based position.
 * The forced ranks double as witnesses for kernel computations downstream.
 *
 * Two fixed shapes are provided: the Gysin pattern
 *     [B^0, X^0, G^{-1}, B^1, X^1, G^0, B^2, X^2, G^1, ...]
 * and the lower pattern
 *     [E^0, G^0, R^0, E^1, G^1, R^1, ...].
 */
#pragma once

#include <algorithm>
#include <vector>

#include "strata/core.hpp"

namespace strata {

struct LESReport {
    bool feasible = false;
    int violation_position = 0;          // 1-based term index, 0 when feasible
    std::vector<long long> terms;        // the dimensions checked
    std::vector<long long> arrow_rank;   // arrow_rank[j] = rank of T_j -> T_{j+1}

    /** Rank of the arrow leaving term j (1-based); 0 outside the range. */
    long long rank_out_of(int j) const
    {
        if (j < 1 || j >= static_cast<int>(arrow_rank.size()))
            return 0;
        return arrow_rank[static_cast<size_t>(j)];
    }
};

/** Decide whether dimensions can fit an exact sequence 0 -> T_1...T_m -> 0. */
inline LESReport les_feasible(const std::vector<long long>& terms)
{
    LESReport rep;
    rep.terms = terms;
    rep.arrow_rank.assign(terms.size() + 1, 0);
    long long carry = 0;
    for (size_t j = 0; j < terms.size(); ++j) {
        carry = terms[j] - carry;
        if (carry < 0) {
            rep.violation_position = static_cast<int>(j) + 1;
            return rep;
        }
        rep.arrow_rank[j + 1] = carry;
    }
    if (carry != 0) {
        rep.violation_position = static_cast<int>(terms.size());
        return rep;
    }
    rep.feasible = true;
    return rep;
}

namespace detail {

inline int sequence_top(const BettiTable& a, const BettiTable& b, const BettiTable& c)
{
    return std::max({a.top_degree(), b.top_degree(), c.top_degree()}) + 2;
}

}  // namespace detail

/** Sequence shapes understood by the pattern overload of les_feasible. */
enum class LesPattern { gysin, lower_approximation };

/** Flatten Gysin data: blocks [B^j, X^j, G^{j-1}] for j = 0..top. */
inline std::vector<long long> gysin_sequence_terms(const BettiTable& orbit, const BettiTable& total,
                                                   const BettiTable& gysin)
{
    int top = detail::sequence_top(orbit, total, gysin);
    std::vector<long long> terms;
    for (int j = 0; j <= top; ++j) {
        terms.push_back(orbit.at(j));
        terms.push_back(total.at(j));
        terms.push_back(gysin.at(j - 1));
    }
    return terms;
}

/** Flatten lower-sequence data: blocks [E^j, G^j, R^j] for j = 0..top. */
inline std::vector<long long> lower_sequence_terms(const BettiTable& lower, const BettiTable& gysin,
                                                   const BettiTable& residues)
{
    int top = detail::sequence_top(lower, gysin, residues);
    std::vector<long long> terms;
    for (int j = 0; j <= top; ++j) {
        terms.push_back(lower.at(j));
        terms.push_back(gysin.at(j));
        terms.push_back(residues.at(j));
    }
    return terms;
}

/**
 * Lay a graded triple into one of the two sequence patterns and test it.
 *
 * gysin:              (a, b, c) = (B, X, G), blocks [B^j, X^j, G^{j-1}];
 * lower_approximation: (a, b, c) = (E, G, R), blocks [E^j, G^j, R^j].
 */
inline LESReport les_feasible(const BettiTable& a, const BettiTable& b, const BettiTable& c,
                              LesPattern pattern)
{
    return les_feasible(pattern == LesPattern::gysin ? gysin_sequence_terms(a, b, c)
                                                     : lower_sequence_terms(a, b, c));
}

/** Rank of the connecting map G^i -> B^{i+2} in a Gysin report. */
inline long long gysin_connecting_rank(const LESReport& rep, int i)
{
    return rep.rank_out_of(3 * i + 6);
}

/** Rank of the connecting map R^i -> E^{i+1} in a lower-sequence report. */
inline long long lower_connecting_rank(const LESReport& rep, int i)
{
    return rep.rank_out_of(3 * i + 3);
}

}  // namespace strata
