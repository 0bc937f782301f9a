#pragma once

#include "ineq/atoms.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ineq {

/// Raised when an elimination exceeds its configured size limits.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace linarith {

inline constexpr std::size_t kDefaultAtomCap = 5000;

/// `combo rel 0` with rel in {Lt, Le, Eq}. The constant part is the
/// coefficient of the reserved variable 1, which is positive in every system.
struct LinAtom {
    std::map<Var, Rational> combo;
    Rel rel = Rel::Le;
    Provenance origins;

    bool is_constant() const;
};

LinAtom from_comm(const CommAtom &atom, Provenance origins = {});
/// `name = combo`, as the row `name - combo = 0`.
LinAtom definition(Var name, const std::map<Var, Rational> &combo, Provenance origins = {});

/// A set of linear atoms, normalized and duplicate-free. Atoms with the same
/// direction are reduced to the strongest one. A constant false atom is kept
/// as the empty combination with rel Lt.
class LinSystem {
public:
    explicit LinSystem(std::size_t atom_cap = kDefaultAtomCap) : cap_(atom_cap) {}

    void add(LinAtom atom);
    const std::vector<LinAtom> &atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    std::size_t atom_cap() const { return cap_; }
    /// Non-constant variables in id order.
    std::vector<Var> variables() const;
    /// The false constant atom, if one is present.
    const LinAtom *contradiction() const;

private:
    using Key = std::pair<bool, std::vector<std::pair<std::uint32_t, Rational>>>;

    std::vector<LinAtom> atoms_;
    std::map<Key, std::size_t> index_;
    std::size_t cap_;
};

/// Exact projection eliminating `x` (which must not be the constant 1).
/// Equalities mentioning `x` are used for substitution first.
LinSystem fm_eliminate(const LinSystem &sys, Var x);

/// Eliminates every variable not in `keep`; the constant 1 is kept unless
/// `eliminate_one` is set, in which case `1 > 0` is added first.
LinSystem project_onto(const LinSystem &sys, const std::vector<Var> &keep, bool eliminate_one = false);

struct FeasibilityResult {
    bool infeasible = false;
    Provenance origins;
};

FeasibilityResult check_feasibility(const LinSystem &sys);
bool is_infeasible(const LinSystem &sys);

/// True when `sys` entails `atom` (for equalities, both directions).
bool entails(const LinSystem &sys, const CommAtom &atom);
/// Like entails, also returning the origins of the rows that were used.
std::optional<Provenance> entailment_premises(const LinSystem &sys, const CommAtom &atom);

struct PairProjection {
    bool infeasible = false;
    std::vector<CommAtom> atoms;
    /// Parallel to `atoms`: origins of a premise set sufficient for each atom.
    std::vector<Provenance> premises;
};

/// Strongest comparisons between `u` and `v` entailed by `sys`: at most two
/// half-planes through the origin of the (u, v) plane. When `v` is the
/// constant 1 the result is a pair of constant bounds on `u`. An
/// infeasible system yields `w < 0` and `w > 0` for whichever of u, v is
/// not the constant.
PairProjection project_to_pair(const LinSystem &sys, Var u, Var v);

}  // namespace linarith
}  // namespace ineq
