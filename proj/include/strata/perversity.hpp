/**
 * Perversities: integer weights on the singular strata of a fixed space.
 *
 * A perversity stores one integer per singular stratum id.  Arithmetic is
 * pointwise and only defined between perversities over the same stratum
 * set; mixing spaces raises SPACE_MISMATCH.  The classical top perversity
 * assigns codim(S) - 2 to each stratum.
 */
#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

#include "strata/core.hpp"
#include "strata/stratify.hpp"

namespace strata {

class Perversity {
public:
    Perversity() = default;

    static Perversity zero(const StratifiedSpace& sp) { return constant(sp, 0); }

    static Perversity constant(const StratifiedSpace& sp, int value)
    {
        Perversity p;
        for (const Stratum* s : sp.singular_strata())
            p.values_[s->id] = value;
        return p;
    }

    /** The top perversity: codim(S) - 2 on every singular stratum. */
    static Perversity top(const StratifiedSpace& sp)
    {
        Perversity p;
        for (const Stratum* s : sp.singular_strata())
            p.values_[s->id] = sp.codim(*s) - 2;
        return p;
    }

    /** Wrap explicit values; they must cover the singular strata exactly. */
    static Perversity from_values(const StratifiedSpace& sp, std::map<std::string, int> values)
    {
        for (const Stratum* s : sp.singular_strata())
            if (!values.count(s->id))
                throw StrataError(Code::SPACE_MISMATCH,
                                  "perversity missing value for stratum " + s->id);
        for (const auto& [id, v] : values) {
            const Stratum* s = sp.find_stratum(id);
            if (!s || !s->singular)
                throw StrataError(Code::SPACE_MISMATCH,
                                  "perversity names a non-singular stratum: " + id);
        }
        Perversity p;
        p.values_ = std::move(values);
        return p;
    }

    int at(const std::string& id) const
    {
        auto it = values_.find(id);
        if (it == values_.end())
            throw StrataError(Code::SPACE_MISMATCH, "perversity has no value for stratum " + id);
        return it->second;
    }

    const std::map<std::string, int>& values() const { return values_; }

    bool same_strata(const Perversity& other) const
    {
        if (values_.size() != other.values_.size())
            return false;
        for (const auto& [id, v] : values_)
            if (!other.values_.count(id))
                return false;
        return true;
    }

    friend Perversity operator+(const Perversity& a, const Perversity& b)
    {
        Perversity r = a;
        if (!a.same_strata(b))
            throw StrataError(Code::SPACE_MISMATCH, "perversity arithmetic across different strata");
        for (auto& [id, v] : r.values_)
            v += b.values_.at(id);
        return r;
    }

    friend Perversity operator-(const Perversity& a, const Perversity& b)
    {
        Perversity r = a;
        if (!a.same_strata(b))
            throw StrataError(Code::SPACE_MISMATCH, "perversity arithmetic across different strata");
        for (auto& [id, v] : r.values_)
            v -= b.values_.at(id);
        return r;
    }

    /** Every entry shifted by the same amount. */
    Perversity shifted(int delta) const
    {
        Perversity r = *this;
        for (auto& [id, v] : r.values_)
            v += delta;
        return r;
    }

    /** Pointwise comparison (partial order). */
    friend bool leq(const Perversity& a, const Perversity& b)
    {
        if (!a.same_strata(b))
            throw StrataError(Code::SPACE_MISMATCH, "perversity comparison across different strata");
        for (const auto& [id, v] : a.values_)
            if (v > b.values_.at(id))
                return false;
        return true;
    }

    friend bool operator==(const Perversity& a, const Perversity& b)
    {
        return a.values_ == b.values_;
    }

    friend Perversity perversity_combine(const Perversity& p, const Perversity& q,
                                         const std::string& op)
    {
        if (!p.same_strata(q))
            throw StrataError(Code::SPACE_MISMATCH, "perversity arithmetic across different strata");
        if (op == "add")
            return p + q;
        if (op == "sub")
            return p - q;
        if (op != "min" && op != "max")
            throw StrataError(Code::BAD_INPUT, "unknown perversity combination: " + op);
        Perversity r = p;
        for (auto& [id, v] : r.values_)
            v = op == "min" ? std::min(v, q.values_.at(id)) : std::max(v, q.values_.at(id));
        return r;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto& [id, v] : values_) {
            if (!first)
                os << ',';
            os << id << '=' << v;
            first = false;
        }
        return os.str();
    }

private:
    std::map<std::string, int> values_;
};

/** Perversities by name: "zero", "top", or "constant" with a value. */
inline Perversity named_perversity(const StratifiedSpace& sp, const std::string& name,
                                   int value = 0)
{
    if (name == "zero")
        return Perversity::zero(sp);
    if (name == "top")
        return Perversity::top(sp);
    if (name == "constant")
        return Perversity::constant(sp, value);
    throw StrataError(Code::BAD_INPUT, "unknown perversity name: " + name);
}

}  // namespace strata
