#pragma once

#include "ineq/rational.hpp"
#include "ineq/raw_term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ineq {

using PretermId = std::uint32_t;
inline constexpr PretermId kNoPreterm = UINT32_MAX;

/// A term in normal form: either zero, or `coeff * body` with a nonzero
/// coefficient and an interned preterm body.
struct NormalTerm {
    Rational coeff;
    PretermId body = kNoPreterm;

    static NormalTerm zero() { return {}; }
    bool is_zero() const { return coeff.is_zero(); }

    friend bool operator==(const NormalTerm &a, const NormalTerm &b) {
        return a.coeff == b.coeff && a.body == b.body;
    }
};

enum class PretermKind { One, Var, App, Add, Mul };

struct Summand {
    Rational coeff;
    PretermId term;
};

struct Factor {
    PretermId base;
    long exponent;
};

/// Hash-consed store of preterms in normal form.
///
/// Variables are ordered by registration (first appearance), with the
/// constant 1 above every variable and function applications below them.
/// Preterms of lower rank precede preterms of higher rank; within an
/// additive rank the coefficient vectors over the merged summands are
/// compared lexicographically, within a multiplicative rank the exponent
/// vectors over the merged bases.
class TermStore {
public:
    TermStore();

    PretermId one() const { return 0; }
    PretermId variable(std::string_view name);
    std::optional<PretermId> find_variable(std::string_view name) const;
    PretermId application(std::string_view symbol, const NormalTerm &argument);

    /// Registers the variables of `t` in order of first appearance.
    void register_variables(const RawTerm &t);

    /// Throws TermError on a literal zero denominator or an inverse of zero.
    NormalTerm normalize(const RawTerm &t);

    NormalTerm constant(const Rational &value) const;
    NormalTerm term(PretermId id) const { return {Rational(1), id}; }

    NormalTerm add(const NormalTerm &a, const NormalTerm &b);
    NormalTerm subtract(const NormalTerm &a, const NormalTerm &b);
    NormalTerm multiply(const NormalTerm &a, const NormalTerm &b);
    NormalTerm negate(const NormalTerm &a) const;
    NormalTerm invert(const NormalTerm &a);
    NormalTerm pow_int(const NormalTerm &a, long exponent);
    NormalTerm scale(const Rational &factor, const NormalTerm &a) const;

    PretermKind kind(PretermId id) const { return nodes_.at(id).kind; }
    int rank(PretermId id) const { return nodes_.at(id).rank; }
    const std::vector<Summand> &summands(PretermId id) const { return nodes_.at(id).summands; }
    const std::vector<Factor> &factors(PretermId id) const { return nodes_.at(id).factors; }
    /// Variable name or function symbol.
    const std::string &name(PretermId id) const { return nodes_.at(id).name; }
    std::size_t variable_index(PretermId id) const { return nodes_.at(id).var_index; }
    const NormalTerm &argument(PretermId id) const { return nodes_.at(id).argument; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<std::string> &variables() const { return var_names_; }

    /// Three-way comparison: negative iff s precedes t.
    int compare(PretermId s, PretermId t) const;
    bool precedes(PretermId s, PretermId t) const { return compare(s, t) < 0; }
    /// Ordering extended to normal terms, sign-aware.
    int compare_terms(const NormalTerm &a, const NormalTerm &b) const;

    /// Checks every structural invariant of the preterm, recursively.
    bool well_formed(PretermId id) const;

    std::string render(const NormalTerm &t) const;
    std::string render(PretermId id) const;

    /// Exact value; zero bases under negative exponents evaluate to zero.
    Rational evaluate(const NormalTerm &t, const Assignment &env,
                      const FunctionTable *functions = nullptr) const;

private:
    struct Node {
        PretermKind kind = PretermKind::One;
        int rank = 0;
        std::size_t var_index = 0;
        std::string name;
        NormalTerm argument;
        std::vector<Summand> summands;
        std::vector<Factor> factors;
    };

    PretermId intern(Node node, const std::string &key);
    NormalTerm make_sum(std::vector<Summand> terms);
    PretermId make_product(std::vector<Factor> factors);
    std::vector<Summand> expand_sum(const NormalTerm &t) const;
    std::vector<Factor> expand_product(PretermId body) const;
    int compare_basic(PretermId s, PretermId t) const;
    std::string render_body(PretermId id, bool wrap_sums) const;
    Rational evaluate_preterm(PretermId id, const Assignment &env,
                              const FunctionTable *functions) const;

    std::vector<Node> nodes_;
    std::map<std::string, PretermId, std::less<>> index_;
    std::vector<std::string> var_names_;
};

/// Decides provable equality by comparing normal forms in a fresh store.
bool equal_terms(const RawTerm &s, const RawTerm &t);

}  // namespace ineq
