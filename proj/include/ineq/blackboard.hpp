#pragma once

#include "ineq/atoms.hpp"
#include "ineq/linarith.hpp"
#include "ineq/monofun.hpp"
#include "ineq/mularith.hpp"
#include "ineq/normal_form.hpp"
#include "ineq/raw_term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ineq {

/// A hypothesis or goal `lhs rel rhs` over raw terms.
struct Comparison {
    RawTerm lhs;
    Rel rel;
    RawTerm rhs;
    std::string text;
};

/// The comparison asserting the opposite; undefined for equalities.
Comparison negated(const Comparison &c);

enum class Module { Input, Definition, Signs, Additive, Multiplicative, Monotone, Table };
const char *module_name(Module m);

/// name = sum of coeff * var (the constant part sits on the variable 1).
struct AddDef {
    Var name;
    std::map<Var, Rational> combo;
};

struct Bottom {};

using Payload = std::variant<CommAtom, AddDef, mularith::MultDef, monofun::Application, Bottom>;

struct Fact {
    std::uint32_t id = 0;
    int round = 0;
    Module module = Module::Input;
    Provenance premises;
    Payload payload;
    std::string derived;
    std::string note;
};

struct EngineOptions {
    int max_rounds = 30;
    long root_denom_bound = mularith::kDefaultRootDenominator;
    std::size_t atom_cap = linarith::kDefaultAtomCap;
};

/// Definitions, the table of pairwise comparisons and the derivation
/// record for one refutation task.
class ProblemState {
public:
    /// Names every compound subterm and turns each hypothesis into
    /// comparisons between names. Throws std::invalid_argument on an
    /// equality-free disequality or unsupported input.
    static ProblemState separate(const std::vector<Comparison> &hypotheses,
                                 const std::vector<monofun::MonoDecl> &decls, EngineOptions options = {});

    /// Adds `atom` unless the table already implies it; drops residents of
    /// the pair that become redundant. Returns whether the table changed.
    bool assert_comm_atom(const CommAtom &atom, Module module, Provenance premises, std::string note = {});

    /// One round: signs, additive pass, signs, multiplicative pass,
    /// monotone pass. Returns whether anything changed.
    bool run_round();

    bool refuted() const { return bottom_.has_value(); }
    std::optional<std::uint32_t> contradiction() const { return bottom_; }
    int round() const { return round_; }
    const EngineOptions &options() const { return options_; }

    const std::vector<Fact> &facts() const { return facts_; }
    /// Fact ids currently held in the table, in pair order.
    std::vector<std::uint32_t> table_facts() const;
    std::vector<SourcedAtom> table_atoms() const;
    std::size_t derived_atom_count() const;

    const TermStore &store() const { return store_; }
    std::size_t var_count() const { return var_terms_.size(); }
    std::size_t input_var_count() const { return input_vars_; }
    /// Preterm named by `v` (the constant 1 for v = 1).
    PretermId var_term(Var v) const { return var_terms_.at(v.id); }
    std::string var_name(Var v) const { return var_names_.at(v.id); }
    /// Generated names with the terms they stand for.
    std::vector<std::pair<std::string, std::string>> name_table() const;
    const std::vector<monofun::MonoDecl> &decls() const { return decls_; }

    /// Strongest relation the table entails between lhs and coeff*rhs.
    std::optional<monofun::Known> known(Var lhs, const Rational &coeff, Var rhs) const;

private:
    ProblemState() = default;

    Var name_of(PretermId id);
    Var fresh(PretermId id);
    std::uint32_t add_fact(Module module, Provenance premises, Payload payload, std::string derived,
                           std::string note);
    void add_bottom(Module module, Provenance premises, std::string note);
    linarith::LinSystem pair_knowledge(Var x, Var y) const;
    std::string render_atom(const CommAtom &atom) const;

    bool sign_pass();
    bool additive_pass();
    bool multiplicative_pass();
    bool monotone_pass();

    TermStore store_;
    std::vector<PretermId> var_terms_;
    std::vector<std::string> var_names_;
    std::map<PretermId, Var> names_;
    std::size_t input_vars_ = 0;

    std::vector<std::pair<AddDef, std::uint32_t>> add_defs_;
    std::vector<mularith::MultDef> mult_defs_;
    std::vector<monofun::Application> apps_;
    std::vector<monofun::MonoDecl> decls_;

    std::map<std::pair<Var, Var>, std::vector<std::uint32_t>> table_;
    std::vector<Fact> facts_;
    std::optional<std::uint32_t> bottom_;

    EngineOptions options_;
    int round_ = 0;
    std::uint64_t version_ = 0;
    std::optional<std::uint64_t> additive_seen_;
    std::optional<std::uint64_t> multiplicative_seen_;
    std::optional<std::uint64_t> monotone_seen_;
};

enum class VerdictKind { Refuted, Saturated, RoundCapReached, ResourceLimit };
/// "refuted", "saturated", "round-cap", "resource-limit".
const char *verdict_name(VerdictKind kind);

struct Verdict {
    VerdictKind kind = VerdictKind::Saturated;
    int rounds = 0;
    std::string detail;
};

Verdict refute(ProblemState &state, int cap);

struct Subtask {
    std::string goal;
    ProblemState state;
    Verdict verdict;
};

struct ProofResult {
    Verdict verdict;
    std::vector<Subtask> subtasks;
    /// Index of the subtask whose trace explains the verdict.
    std::size_t deciding = 0;
};

/// Refutes the hypotheses together with the negated goal; an equality goal
/// gives two subtasks, both of which must be refuted.
ProofResult prove_sequent(const std::vector<Comparison> &hypotheses, const Comparison &goal,
                          const std::vector<monofun::MonoDecl> &decls, EngineOptions options = {});
ProofResult refute_hypotheses(const std::vector<Comparison> &hypotheses,
                              const std::vector<monofun::MonoDecl> &decls, EngineOptions options = {});

struct ReplayFailure {
    std::uint32_t fact;
    std::string reason;
};

/// Re-derives every derived fact from its listed premises alone, using the
/// module that produced it.
std::vector<ReplayFailure> replay(const ProblemState &state);

}  // namespace ineq
