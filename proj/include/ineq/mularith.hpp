#pragma once

#include "ineq/atoms.hpp"
#include "ineq/linarith.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ineq::mularith {

/// Subset of {negative, zero, positive}.
class SignSet {
public:
    static constexpr std::uint8_t kNeg = 1;
    static constexpr std::uint8_t kZero = 2;
    static constexpr std::uint8_t kPos = 4;

    constexpr SignSet() = default;
    constexpr explicit SignSet(std::uint8_t bits) : bits_(bits & 7U) {}

    static constexpr SignSet unknown() { return SignSet(7); }
    static constexpr SignSet pos() { return SignSet(kPos); }
    static constexpr SignSet neg() { return SignSet(kNeg); }
    static constexpr SignSet zero() { return SignSet(kZero); }
    static constexpr SignSet nonneg() { return SignSet(kZero | kPos); }
    static constexpr SignSet nonpos() { return SignSet(kNeg | kZero); }
    static constexpr SignSet nonzero() { return SignSet(kNeg | kPos); }
    static SignSet of(const Rational &value);

    constexpr std::uint8_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(std::uint8_t bit) const { return (bits_ & bit) != 0; }
    constexpr bool subset_of(SignSet other) const { return (bits_ & ~other.bits_) == 0; }
    /// Strictly positive or strictly negative.
    constexpr bool is_strict() const { return bits_ == kPos || bits_ == kNeg; }
    constexpr SignSet meet(SignSet other) const { return SignSet(bits_ & other.bits_); }
    SignSet times(SignSet other) const;
    /// Signs of x^e for x in this set; zero stays zero for negative e.
    SignSet power(long exponent) const;
    SignSet negated() const;
    /// "pos", "nonneg", ... ; "none" for the empty set.
    std::string name() const;

    friend constexpr bool operator==(SignSet, SignSet) = default;

private:
    std::uint8_t bits_ = 7;
};

struct SignEntry {
    SignSet set = SignSet::unknown();
    Provenance origins;
};

class SignEnv {
public:
    SignEnv();
    const SignEntry &at(Var v) const;
    SignSet sign(Var v) const { return at(v).set; }
    /// Intersects the entry for `v`; returns true when it shrank.
    bool refine(Var v, SignSet set, const Provenance &origins);
    const std::map<Var, SignEntry> &entries() const { return entries_; }

private:
    std::map<Var, SignEntry> entries_;
};

/// name = prod base^exponent, with distinct bases.
struct MultDef {
    Var name;
    std::vector<std::pair<Var, long>> factors;
    Provenance origins;
};

struct SignResult {
    SignEnv env;
    /// Set when some variable has no consistent sign.
    std::optional<Provenance> conflict;
};

SignResult infer_signs(const std::vector<MultDef> &defs, const std::vector<SourcedAtom> &comm);

/// Comparison atom x rel c*y expressed as a sign constraint on x, if y is
/// the constant 1; used by both sign inference and atom conversion.
std::optional<SignSet> sign_from_bound(Rel rel, const Rational &c);

/// `monomial rel bound` over absolute values, rel in {Lt, Le, Eq}, bound > 0.
/// An empty monomial with rel Lt and bound 1 is the false atom.
struct MultAtom {
    std::map<Var, long> monomial;
    Rel rel = Rel::Lt;
    Rational bound{1};
    Provenance origins;
};

/// Set of multiplicative atoms, reduced like a linear system.
class MultSystem {
public:
    explicit MultSystem(std::size_t atom_cap = linarith::kDefaultAtomCap) : cap_(atom_cap) {}

    void add(MultAtom atom);
    const std::vector<MultAtom> &atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    std::size_t atom_cap() const { return cap_; }
    std::vector<Var> variables() const;
    const MultAtom *contradiction() const;

private:
    using Key = std::pair<bool, std::vector<std::pair<std::uint32_t, long>>>;

    std::vector<MultAtom> atoms_;
    std::map<Key, std::size_t> index_;
    std::size_t cap_;
};

inline constexpr long kMaxExponent = 1L << 16;

/// Translates definitions and comparisons whose variables all have a strict
/// sign into atoms over |x|. Anything touching a possibly-zero or
/// unknown-sign variable is left out.
MultSystem to_positive_cone(const std::vector<MultDef> &defs, const std::vector<SourcedAtom> &comm,
                            const SignEnv &env);

/// Eliminates `x`, substituting an equality first when one mentions it.
/// Throws ResourceLimit when an exponent exceeds kMaxExponent.
MultSystem mult_eliminate(const MultSystem &sys, Var x);
MultSystem mult_project_onto(const MultSystem &sys, const std::vector<Var> &keep);

struct MultFeasibility {
    bool infeasible = false;
    Provenance origins;
};
MultFeasibility check_mult_feasibility(const MultSystem &sys);

enum class RootDirection { Lower, Upper };

inline constexpr long kDefaultRootDenominator = 1000000;

/// A rational q with q^n <= c (Lower) or q^n >= c (Upper); exact for
/// perfect powers, otherwise a continued-fraction convergent with
/// denominator at most `denom_bound`.
Rational rational_root_bound(const Rational &c, long n, RootDirection dir,
                             long denom_bound = kDefaultRootDenominator);

struct RatioBound {
    CommAtom atom;  // over absolute values
    Provenance premises;
    bool approximated = false;
};

struct RatioProjection {
    bool infeasible = false;
    Provenance infeasible_origins;
    std::vector<RatioBound> bounds;
};

/// Strongest bounds |u| rel c*|v| implied by the system (v may be 1).
RatioProjection project_to_ratio(const MultSystem &sys, Var u, Var v,
                                 long denom_bound = kDefaultRootDenominator);

/// Converts `|u| rel c*|v|` back into an atom over the signed variables.
/// Requires strict signs for u and v in `env`.
CommAtom from_positive_cone(const CommAtom &abs_atom, const SignEnv &env);

/// Converts a comparison over strictly signed variables into a MultAtom;
/// nullopt when the comparison is trivial or not representable.
std::optional<MultAtom> to_mult_atom(const CommAtom &atom, const SignEnv &env, Provenance origins = {});

/// True when the system entails the (signed) comparison, with u and v
/// strictly signed in `env`.
bool mult_entails(const MultSystem &sys, const CommAtom &atom, const SignEnv &env);

}  // namespace ineq::mularith
