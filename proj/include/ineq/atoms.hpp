#pragma once

#include "ineq/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ineq {

/// Index of a named quantity on the blackboard. Index 0 is the constant 1.
struct Var {
    std::uint32_t id = 0;

    constexpr bool is_one() const { return id == 0; }
    friend constexpr auto operator<=>(Var, Var) = default;
};

inline constexpr Var kOne{0};

enum class Rel { Lt, Le, Eq, Ge, Gt };

/// Relation obtained after multiplying both sides by a negative number.
Rel flip(Rel r);
/// Logical negation; undefined for Eq.
Rel negate(Rel r);
bool is_strict(Rel r);
const char *symbol(Rel r);
/// Truth of `a r b`.
bool holds(const Rational &a, Rel r, const Rational &b);

/// Sorted, duplicate-free list of fact identifiers justifying a row.
using Provenance = std::vector<std::uint32_t>;

Provenance merge(const Provenance &a, const Provenance &b);

/// `lhs rel coeff * rhs`. Comparisons with constants use rhs = 1.
struct CommAtom {
    Var lhs;
    Rel rel = Rel::Lt;
    Rational coeff;
    Var rhs = kOne;

    friend bool operator==(const CommAtom &, const CommAtom &) = default;
};

/// Rewrites an atom so that constants sit on the right and otherwise
/// lhs.id < rhs.id. Atoms with a zero coefficient become comparisons
/// with the constant 1.
CommAtom canonical(const CommAtom &atom);

std::string render(const CommAtom &atom, const std::function<std::string(Var)> &name);

struct SourcedAtom {
    CommAtom atom;
    Provenance origins;
};

/// `a*p rel b*q` rewritten as a canonical atom, unless it is a constant
/// statement (then kind says whether it holds).
struct ScaledComparison {
    enum class Kind { True, False, Atom };
    Kind kind = Kind::True;
    CommAtom atom;
};

ScaledComparison compare_scaled(const Rational &a, Var p, Rel rel, const Rational &b, Var q);

}  // namespace ineq
