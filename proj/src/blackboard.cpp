#include "ineq/blackboard.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ineq {

using linarith::LinSystem;

Comparison negated(const Comparison &c) {
    if (c.rel == Rel::Eq) throw std::logic_error("an equality has no single negation");
    return {c.lhs, negate(c.rel), c.rhs, "not (" + c.text + ")"};
}

const char *module_name(Module m) {
    switch (m) {
    case Module::Input: return "input";
    case Module::Definition: return "definition";
    case Module::Signs: return "signs";
    case Module::Additive: return "additive";
    case Module::Multiplicative: return "multiplicative";
    case Module::Monotone: return "monotone";
    case Module::Table: return "table";
    }
    return "?";
}

const char *verdict_name(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::Refuted: return "refuted";
    case VerdictKind::Saturated: return "saturated";
    case VerdictKind::RoundCapReached: return "round-cap";
    case VerdictKind::ResourceLimit: return "resource-limit";
    }
    return "?";
}

namespace {

std::pair<Var, Var> pair_key(Var x, Var y) {
    return x < y ? std::pair{x, y} : std::pair{y, x};
}

// Union-find over variable ids, ignoring the constant.
class Components {
public:
    void join(Var a, Var b) {
        if (a.is_one() || b.is_one()) return;
        const Var ra = find(a);
        const Var rb = find(b);
        if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
    }
    void touch(Var a) {
        if (!a.is_one()) find(a);
    }
    Var find(Var a) {
        auto it = parent_.find(a);
        if (it == parent_.end()) {
            parent_[a] = a;
            return a;
        }
        if (it->second == a) return a;
        const Var root = find(it->second);
        parent_[a] = root;
        return root;
    }
    std::map<Var, std::vector<Var>> groups() {
        std::map<Var, std::vector<Var>> out;
        std::vector<Var> keys;
        for (const auto &kv : parent_) keys.push_back(kv.first);
        for (Var v : keys) out[find(v)].push_back(v);
        return out;
    }

private:
    std::map<Var, Var> parent_;
};

std::vector<std::pair<Var, Var>> pairs_of(const std::vector<Var> &group) {
    std::vector<std::pair<Var, Var>> out;
    for (std::size_t i = 0; i < group.size(); ++i) {
        out.emplace_back(group[i], kOne);
        for (std::size_t j = i + 1; j < group.size(); ++j) out.emplace_back(group[i], group[j]);
    }
    return out;
}

std::string sign_note(mularith::SignSet s) {
    return "sign " + s.name();
}

std::optional<CommAtom> sign_atom(Var v, mularith::SignSet s) {
    using mularith::SignSet;
    if (s == SignSet::pos()) return CommAtom{v, Rel::Gt, Rational(0), kOne};
    if (s == SignSet::neg()) return CommAtom{v, Rel::Lt, Rational(0), kOne};
    if (s == SignSet::zero()) return CommAtom{v, Rel::Eq, Rational(0), kOne};
    if (s == SignSet::nonneg()) return CommAtom{v, Rel::Ge, Rational(0), kOne};
    if (s == SignSet::nonpos()) return CommAtom{v, Rel::Le, Rational(0), kOne};
    return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Term separation

ProblemState ProblemState::separate(const std::vector<Comparison> &hypotheses,
                                    const std::vector<monofun::MonoDecl> &decls, EngineOptions options) {
    ProblemState st;
    st.options_ = options;
    st.decls_ = decls;
    st.var_terms_.push_back(st.store_.one());
    st.var_names_.emplace_back("1");
    for (const auto &h : hypotheses) {
        st.store_.register_variables(h.lhs);
        st.store_.register_variables(h.rhs);
    }
    for (const auto &name : st.store_.variables()) {
        const PretermId id = st.store_.variable(name);
        st.names_[id] = Var{static_cast<std::uint32_t>(st.var_terms_.size())};
        st.var_terms_.push_back(id);
        st.var_names_.push_back(name);
    }
    st.input_vars_ = st.var_terms_.size() - 1;

    for (const auto &h : hypotheses) {
        const NormalTerm a = st.store_.normalize(h.lhs);
        const NormalTerm b = st.store_.normalize(h.rhs);
        const Var p = a.is_zero() ? kOne : st.name_of(a.body);
        const Var q = b.is_zero() ? kOne : st.name_of(b.body);
        std::vector<Rel> rels{h.rel};
        if (h.rel == Rel::Eq) rels = {Rel::Le, Rel::Ge};
        for (Rel r : rels) {
            const auto cmp = compare_scaled(a.coeff, p, r, b.coeff, q);
            if (cmp.kind == ScaledComparison::Kind::True) continue;
            const CommAtom atom = cmp.kind == ScaledComparison::Kind::False
                                      ? CommAtom{kOne, Rel::Lt, Rational(0), kOne}
                                      : cmp.atom;
            st.assert_comm_atom(atom, Module::Input, {}, h.text);
            if (st.refuted()) return st;
        }
    }
    return st;
}

Var ProblemState::fresh(PretermId id) {
    const Var v{static_cast<std::uint32_t>(var_terms_.size())};
    var_terms_.push_back(id);
    var_names_.push_back("_t" + std::to_string(var_terms_.size() - 1 - input_vars_));
    names_[id] = v;
    return v;
}

Var ProblemState::name_of(PretermId id) {
    if (id == store_.one()) return kOne;
    if (auto it = names_.find(id); it != names_.end()) return it->second;
    switch (store_.kind(id)) {
    case PretermKind::One:
        return kOne;
    case PretermKind::Var:
        // variables are all registered before naming starts
        return fresh(id);
    case PretermKind::App: {
        const NormalTerm &arg = store_.argument(id);
        const Var a = arg.is_zero() ? kOne : name_of(arg.body);
        const Rational coeff = arg.is_zero() ? Rational(0) : arg.coeff;
        const Var v = fresh(id);
        std::string text = var_name(v) + " = " + store_.name(id) + "(";
        if (coeff.is_zero()) text += "0";
        else if (a.is_one()) text += coeff.to_string();
        else text += (coeff == Rational(1) ? "" : coeff.to_string() + " * ") + var_name(a);
        text += ")";
        monofun::Application app{v, store_.name(id), coeff, a, {}};
        const auto fid = add_fact(Module::Definition, {}, app, text, store_.render(id));
        app.origins = {fid};
        apps_.push_back(std::move(app));
        return v;
    }
    case PretermKind::Add: {
        AddDef def;
        for (const auto &s : store_.summands(id)) def.combo[name_of(s.term)] += s.coeff;
        def.name = fresh(id);
        std::ostringstream os;
        os << var_name(def.name) << " = ";
        bool first = true;
        for (const auto &s : store_.summands(id)) {
            const Var t = names_.count(s.term) ? names_.at(s.term) : kOne;
            const bool negative = s.coeff.sign() < 0;
            os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
            first = false;
            if (t.is_one()) os << s.coeff.abs();
            else os << (s.coeff.abs() == Rational(1) ? "" : s.coeff.abs().to_string() + " * ") << var_name(t);
        }
        const auto fid = add_fact(Module::Definition, {}, def, os.str(), store_.render(id));
        add_defs_.emplace_back(std::move(def), fid);
        return add_defs_.back().first.name;
    }
    case PretermKind::Mul: {
        mularith::MultDef def;
        for (const auto &f : store_.factors(id)) def.factors.emplace_back(name_of(f.base), f.exponent);
        def.name = fresh(id);
        std::ostringstream os;
        os << var_name(def.name) << " = ";
        for (std::size_t i = 0; i < def.factors.size(); ++i) {
            if (i > 0) os << " * ";
            os << var_name(def.factors[i].first);
            if (def.factors[i].second != 1) os << '^' << def.factors[i].second;
        }
        const auto fid = add_fact(Module::Definition, {}, def, os.str(), store_.render(id));
        def.origins = {fid};
        mult_defs_.push_back(std::move(def));
        return mult_defs_.back().name;
    }
    }
    throw std::logic_error("corrupt preterm");
}

// ---------------------------------------------------------------------------
// Facts and the comparison table

std::uint32_t ProblemState::add_fact(Module module, Provenance premises, Payload payload, std::string derived,
                                     std::string note) {
    const auto id = static_cast<std::uint32_t>(facts_.size());
    facts_.push_back({id, round_, module, std::move(premises), std::move(payload), std::move(derived),
                      std::move(note)});
    return id;
}

void ProblemState::add_bottom(Module module, Provenance premises, std::string note) {
    bottom_ = add_fact(module, std::move(premises), Bottom{}, "false", std::move(note));
}

std::string ProblemState::render_atom(const CommAtom &atom) const {
    return render(atom, [this](Var v) { return var_name(v); });
}

LinSystem ProblemState::pair_knowledge(Var x, Var y) const {
    LinSystem sys(options_.atom_cap);
    auto add_pair = [&](Var a, Var b) {
        auto it = table_.find(pair_key(a, b));
        if (it == table_.end()) return;
        for (auto id : it->second) {
            sys.add(linarith::from_comm(std::get<CommAtom>(facts_[id].payload), {id}));
        }
    };
    add_pair(x, y);
    if (!x.is_one() && !y.is_one()) {
        add_pair(x, kOne);
        add_pair(y, kOne);
    }
    return sys;
}

bool ProblemState::assert_comm_atom(const CommAtom &raw, Module module, Provenance premises, std::string note) {
    if (refuted()) return false;
    const CommAtom atom = canonical(raw);
    if (atom.lhs.is_one()) {
        // 1 rel c * 1
        if (holds(Rational(1), atom.rel, atom.coeff)) return false;
        const auto id = add_fact(module, std::move(premises), atom, render_atom(atom), std::move(note));
        add_bottom(Module::Table, {id}, "constant contradiction");
        ++version_;
        return true;
    }
    const Var x = atom.lhs;
    const Var y = atom.rhs;
    LinSystem known = pair_knowledge(x, y);
    if (linarith::entails(known, atom)) return false;

    const auto id = add_fact(module, std::move(premises), atom, render_atom(atom), std::move(note));
    ++version_;
    auto &residents = table_[pair_key(x, y)];
    residents.push_back(id);

    // drop residents implied by everything else
    for (std::size_t i = 0; i + 1 < residents.size();) {
        std::vector<std::uint32_t> others = residents;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
        auto saved = residents;
        residents = others;
        const LinSystem rest = pair_knowledge(x, y);
        residents = std::move(saved);
        if (linarith::entails(rest, std::get<CommAtom>(facts_[residents[i]].payload))) {
            residents.erase(residents.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }

    const auto feas = linarith::check_feasibility(pair_knowledge(x, y));
    if (feas.infeasible) add_bottom(Module::Table, feas.origins, "comparisons contradict");
    return true;
}

std::vector<std::uint32_t> ProblemState::table_facts() const {
    std::vector<std::uint32_t> out;
    for (const auto &kv : table_) out.insert(out.end(), kv.second.begin(), kv.second.end());
    return out;
}

std::vector<SourcedAtom> ProblemState::table_atoms() const {
    std::vector<SourcedAtom> out;
    for (auto id : table_facts()) out.push_back({std::get<CommAtom>(facts_[id].payload), {id}});
    return out;
}

std::size_t ProblemState::derived_atom_count() const {
    return static_cast<std::size_t>(std::count_if(facts_.begin(), facts_.end(), [](const Fact &f) {
        return f.module != Module::Input && f.module != Module::Definition;
    }));
}

std::vector<std::pair<std::string, std::string>> ProblemState::name_table() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = input_vars_ + 1; i < var_terms_.size(); ++i) {
        out.emplace_back(var_names_[i], store_.render(var_terms_[i]));
    }
    return out;
}

std::optional<monofun::Known> ProblemState::known(Var lhs, const Rational &coeff, Var rhs) const {
    const LinSystem sys = pair_knowledge(lhs, rhs);
    for (Rel r : {Rel::Eq, Rel::Lt, Rel::Gt, Rel::Le, Rel::Ge}) {
        if (auto p = linarith::entailment_premises(sys, {lhs, r, coeff, rhs})) return monofun::Known{r, *p};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Passes

bool ProblemState::sign_pass() {
    const auto result = mularith::infer_signs(mult_defs_, table_atoms());
    if (result.conflict) {
        add_bottom(Module::Signs, *result.conflict, "no consistent sign");
        return true;
    }
    bool changed = false;
    for (const auto &[v, entry] : result.env.entries()) {
        if (v.is_one()) continue;
        if (auto atom = sign_atom(v, entry.set)) {
            changed |= assert_comm_atom(*atom, Module::Signs, entry.origins, sign_note(entry.set));
            if (refuted()) return true;
        }
    }
    return changed;
}

bool ProblemState::additive_pass() {
    if (additive_seen_ == version_) return false;
    std::vector<linarith::LinAtom> rows;
    for (const auto &[def, fid] : add_defs_) rows.push_back(linarith::definition(def.name, def.combo, {fid}));
    for (const auto &s : table_atoms()) rows.push_back(linarith::from_comm(s.atom, s.origins));

    LinSystem all(options_.atom_cap);
    Components comps;
    for (const auto &r : rows) {
        all.add(r);
        Var first = kOne;
        for (const auto &kv : r.combo) {
            comps.touch(kv.first);
            if (kv.first.is_one()) continue;
            if (first.is_one()) first = kv.first;
            else comps.join(first, kv.first);
        }
    }
    const auto feas = linarith::check_feasibility(all);
    if (feas.infeasible) {
        add_bottom(Module::Additive, feas.origins, "linear combination");
        return true;
    }
    bool changed = false;
    for (const auto &[root, group] : comps.groups()) {
        LinSystem sub(options_.atom_cap);
        for (const auto &r : rows) {
            const auto it = std::find_if(r.combo.begin(), r.combo.end(),
                                         [](const auto &kv) { return !kv.first.is_one(); });
            if (it != r.combo.end() && comps.find(it->first) == root) sub.add(r);
        }
        for (const auto &[u, v] : pairs_of(group)) {
            const auto proj = linarith::project_to_pair(sub, u, v);
            for (std::size_t i = 0; i < proj.atoms.size(); ++i) {
                changed |= assert_comm_atom(proj.atoms[i], Module::Additive, proj.premises[i]);
                if (refuted()) return true;
            }
        }
    }
    additive_seen_ = version_;
    return changed;
}

bool ProblemState::multiplicative_pass() {
    if (multiplicative_seen_ == version_) return false;
    const auto comm = table_atoms();
    const auto signs = mularith::infer_signs(mult_defs_, comm);
    if (signs.conflict) {
        add_bottom(Module::Signs, *signs.conflict, "no consistent sign");
        return true;
    }
    mularith::MultSystem all = mularith::to_positive_cone(mult_defs_, comm, signs.env);
    const auto feas = mularith::check_mult_feasibility(all);
    if (feas.infeasible) {
        add_bottom(Module::Multiplicative, feas.origins, "product of comparisons");
        return true;
    }
    Components comps;
    for (const auto &a : all.atoms()) {
        for (const auto &kv : a.monomial) {
            comps.touch(kv.first);
            comps.join(a.monomial.begin()->first, kv.first);
        }
    }
    bool changed = false;
    for (const auto &[root, group] : comps.groups()) {
        mularith::MultSystem sub(options_.atom_cap);
        for (const auto &a : all.atoms()) {
            if (!a.monomial.empty() && comps.find(a.monomial.begin()->first) == root) sub.add(a);
        }
        for (const auto &[u, v] : pairs_of(group)) {
            const auto proj = mularith::project_to_ratio(sub, u, v, options_.root_denom_bound);
            if (proj.infeasible) {
                add_bottom(Module::Multiplicative, proj.infeasible_origins, "product of comparisons");
                return true;
            }
            for (const auto &b : proj.bounds) {
                const CommAtom atom = mularith::from_positive_cone(b.atom, signs.env);
                changed |= assert_comm_atom(atom, Module::Multiplicative, b.premises,
                                            b.approximated ? "root approximation" : "");
                if (refuted()) return true;
            }
        }
    }
    multiplicative_seen_ = version_;
    return changed;
}

bool ProblemState::monotone_pass() {
    if (apps_.empty() || monotone_seen_ == version_) return false;
    const auto derived = monofun::derive_mono_facts(
        decls_, apps_, [this](Var l, const Rational &c, Var r) { return known(l, c, r); });
    bool changed = false;
    for (const auto &s : derived) {
        changed |= assert_comm_atom(s.atom, Module::Monotone, s.origins);
        if (refuted()) return true;
    }
    monotone_seen_ = version_;
    return changed;
}

bool ProblemState::run_round() {
    if (refuted()) return false;
    ++round_;
    bool changed = sign_pass();
    if (refuted()) return true;
    changed |= additive_pass();
    if (refuted()) return true;
    changed |= sign_pass();
    if (refuted()) return true;
    changed |= multiplicative_pass();
    if (refuted()) return true;
    changed |= monotone_pass();
    return changed;
}

// ---------------------------------------------------------------------------
// Driver

Verdict refute(ProblemState &state, int cap) {
    if (state.refuted()) return {VerdictKind::Refuted, state.round(), "contradiction among the hypotheses"};
    for (int r = 1; r <= cap; ++r) {
        bool changed = false;
        try {
            changed = state.run_round();
        } catch (const ResourceLimit &e) {
            return {VerdictKind::ResourceLimit, state.round(), e.what()};
        }
        if (state.refuted()) return {VerdictKind::Refuted, state.round(), {}};
        if (!changed) return {VerdictKind::Saturated, state.round(), {}};
    }
    return {VerdictKind::RoundCapReached, state.round(), {}};
}

namespace {

ProofResult run_subtasks(const std::vector<Comparison> &hypotheses, const std::vector<Comparison> &extra,
                         const std::vector<std::string> &labels, const std::vector<monofun::MonoDecl> &decls,
                         const EngineOptions &options) {
    ProofResult out;
    for (std::size_t i = 0; i < extra.size() || (extra.empty() && i == 0); ++i) {
        std::vector<Comparison> hyps = hypotheses;
        if (!extra.empty()) hyps.push_back(extra[i]);
        ProblemState state = ProblemState::separate(hyps, decls, options);
        Verdict v = refute(state, options.max_rounds);
        out.subtasks.push_back({extra.empty() ? std::string() : labels[i], std::move(state), v});
    }
    out.deciding = out.subtasks.size() - 1;
    for (std::size_t i = 0; i < out.subtasks.size(); ++i) {
        if (out.subtasks[i].verdict.kind != VerdictKind::Refuted) {
            out.deciding = i;
            break;
        }
    }
    out.verdict = out.subtasks[out.deciding].verdict;
    for (const auto &s : out.subtasks) out.verdict.rounds = std::max(out.verdict.rounds, s.verdict.rounds);
    return out;
}

}  // namespace

ProofResult prove_sequent(const std::vector<Comparison> &hypotheses, const Comparison &goal,
                          const std::vector<monofun::MonoDecl> &decls, EngineOptions options) {
    std::vector<Comparison> negations;
    std::vector<std::string> labels;
    if (goal.rel == Rel::Eq) {
        negations.push_back({goal.lhs, Rel::Lt, goal.rhs, "not (" + goal.text + "), below"});
        negations.push_back({goal.lhs, Rel::Gt, goal.rhs, "not (" + goal.text + "), above"});
    } else {
        negations.push_back(negated(goal));
    }
    for (const auto &n : negations) labels.push_back(n.text);
    return run_subtasks(hypotheses, negations, labels, decls, options);
}

ProofResult refute_hypotheses(const std::vector<Comparison> &hypotheses,
                              const std::vector<monofun::MonoDecl> &decls, EngineOptions options) {
    return run_subtasks(hypotheses, {}, {}, decls, options);
}

// ---------------------------------------------------------------------------
// Replay

std::vector<ReplayFailure> replay(const ProblemState &state) {
    std::vector<ReplayFailure> failures;
    const auto &facts = state.facts();
    for (const auto &fact : facts) {
        if (fact.module == Module::Input || fact.module == Module::Definition) continue;
        auto fail = [&](std::string why) { failures.push_back({fact.id, std::move(why)}); };
        if (std::any_of(fact.premises.begin(), fact.premises.end(),
                        [&](std::uint32_t p) { return p >= fact.id; })) {
            fail("premise recorded after the fact");
            continue;
        }
        std::vector<SourcedAtom> comm;
        std::vector<mularith::MultDef> mult_defs;
        std::vector<monofun::Application> apps;
        LinSystem lin;
        for (auto p : fact.premises) {
            const Fact &premise = facts[p];
            if (const auto *a = std::get_if<CommAtom>(&premise.payload)) {
                comm.push_back({*a, {p}});
                lin.add(linarith::from_comm(*a, {p}));
            } else if (const auto *d = std::get_if<AddDef>(&premise.payload)) {
                lin.add(linarith::definition(d->name, d->combo, {p}));
            } else if (const auto *m = std::get_if<mularith::MultDef>(&premise.payload)) {
                mult_defs.push_back(*m);
            } else if (const auto *app = std::get_if<monofun::Application>(&premise.payload)) {
                apps.push_back(*app);
            } else {
                fail("a contradiction used as a premise");
            }
        }
        const bool bottom = std::holds_alternative<Bottom>(fact.payload);
        const CommAtom *atom = std::get_if<CommAtom>(&fact.payload);
        if (!bottom && atom == nullptr) {
            fail("unexpected payload");
            continue;
        }
        switch (fact.module) {
        case Module::Additive:
        case Module::Table: {
            const bool ok = bottom ? linarith::is_infeasible(lin) : linarith::entails(lin, *atom);
            if (!ok) fail("not a linear consequence of its premises");
            break;
        }
        case Module::Signs: {
            const auto r = mularith::infer_signs(mult_defs, comm);
            if (bottom) {
                if (!r.conflict) fail("signs of the premises are consistent");
            } else if (!r.conflict) {
                const auto claimed = mularith::sign_from_bound(atom->rel, atom->coeff);
                if (!atom->rhs.is_one() || !claimed || !r.env.sign(atom->lhs).subset_of(*claimed)) {
                    fail("sign not inferred from its premises");
                }
            }
            break;
        }
        case Module::Multiplicative: {
            const auto r = mularith::infer_signs(mult_defs, comm);
            if (r.conflict) break;
            const auto sys = mularith::to_positive_cone(mult_defs, comm, r.env);
            const bool ok = bottom ? mularith::check_mult_feasibility(sys).infeasible
                                   : mularith::mult_entails(sys, *atom, r.env);
            if (!ok) fail("not a multiplicative consequence of its premises");
            break;
        }
        case Module::Monotone: {
            const auto derived = monofun::derive_mono_facts(
                state.decls(), apps, [&](Var l, const Rational &c, Var r) -> std::optional<monofun::Known> {
                    for (Rel rel : {Rel::Eq, Rel::Lt, Rel::Gt, Rel::Le, Rel::Ge}) {
                        if (linarith::entails(lin, {l, rel, c, r})) return monofun::Known{rel, {}};
                    }
                    return std::nullopt;
                });
            const CommAtom target = bottom ? CommAtom{kOne, Rel::Lt, Rational(0), kOne} : canonical(*atom);
            const bool ok = std::any_of(derived.begin(), derived.end(), [&](const SourcedAtom &s) {
                return canonical(s.atom) == target;
            });
            if (!ok) fail("not a monotone consequence of its premises");
            break;
        }
        default:
            break;
        }
    }
    return failures;
}

}  // namespace ineq
