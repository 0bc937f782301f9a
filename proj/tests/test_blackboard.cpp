#include "doctest.h"
#include "testkit.hpp"

#include "ineq/blackboard.hpp"
#include "ineq/problem.hpp"
#include "ineq/report.hpp"

#include <algorithm>
#include <random>

using namespace ineq;

namespace {

std::vector<Comparison> comparisons(std::initializer_list<const char *> texts) {
    std::vector<Comparison> out;
    for (const char *t : texts) out.push_back(parse_comparison(t));
    return out;
}

Var find_var(const ProblemState &state, const std::string &name) {
    for (std::uint32_t i = 0; i < state.var_count(); ++i) {
        if (state.var_name(Var{i}) == name) return Var{i};
    }
    FAIL("no variable " << name);
    return kOne;
}

std::vector<std::string> derived_texts(const ProblemState &state, Module module) {
    std::vector<std::string> out;
    for (const auto &f : state.facts()) {
        if (f.module == module) out.push_back(f.derived);
    }
    return out;
}

std::vector<std::string> table_texts(const ProblemState &state) {
    std::vector<std::string> out;
    for (auto id : state.table_facts()) out.push_back(state.facts().at(id).derived);
    std::sort(out.begin(), out.end());
    return out;
}

bool contains(const std::vector<std::string> &v, const std::string &s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<monofun::MonoDecl> standard_decls() {
    using monofun::Direction;
    using monofun::RangeSign;
    return {{"exp", Direction::Increasing, RangeSign::Positive},
            {"f", Direction::Increasing, RangeSign::Positive},
            {"g", Direction::Decreasing, RangeSign::Positive},
            {"cube", Direction::Increasing, RangeSign::None}};
}

ProblemState family(const std::string &bound) {
    return ProblemState::separate(comparisons({"0 <= x", ("x <= " + bound).c_str(), "u = x^2", "u < 2*x - 1"}),
                                  {});
}

}  // namespace

TEST_CASE("an equality hypothesis becomes two inequalities") {
    const auto state = ProblemState::separate(comparisons({"x = y"}), {});
    const auto inputs = derived_texts(state, Module::Input);
    CHECK(inputs == std::vector<std::string>{"x <= y", "x >= y"});
}

TEST_CASE("compound subterms are named") {
    const auto state = ProblemState::separate(comparisons({"u < 2*x - 1"}), {});
    CHECK(contains(derived_texts(state, Module::Definition), "_t1 = 1 - 2 * x"));
    // 2x - 1 is named through its sign-normalized form 1 - 2x
    CHECK(derived_texts(state, Module::Input) == std::vector<std::string>{"u < -1 * _t1"});
    CHECK(state.input_var_count() == 2);
    const auto names = state.name_table();
    REQUIRE(names.size() == 1);
    CHECK(names[0].first == "_t1");
}

TEST_CASE("no hypotheses give an empty state") {
    auto state = ProblemState::separate({}, {});
    CHECK(state.facts().empty());
    CHECK(state.var_count() == 1);
    CHECK(refute(state, 30).kind == VerdictKind::Saturated);
}

TEST_CASE("a stronger comparison replaces a weaker one") {
    auto state = ProblemState::separate(comparisons({"v > 0", "u > 2*v"}), {});
    const Var u = find_var(state, "u");
    const Var v = find_var(state, "v");
    const bool changed = state.assert_comm_atom(canonical({u, Rel::Gt, Rational(3), v}), Module::Additive, {});
    CHECK(changed);
    CHECK(table_texts(state) == std::vector<std::string>{"v < 1/3 * u", "v > 0"});
}

TEST_CASE("an entailed comparison is not added") {
    auto state = ProblemState::separate(comparisons({"u > 3*v", "v > 0"}), {});
    const Var u = find_var(state, "u");
    const Var v = find_var(state, "v");
    const auto before = state.facts().size();
    CHECK_FALSE(state.assert_comm_atom(canonical({u, Rel::Gt, Rational(2), v}), Module::Additive, {}));
    CHECK(state.facts().size() == before);
}

TEST_CASE("contradicting a constant bound refutes") {
    auto state = ProblemState::separate(comparisons({"x > 0"}), {});
    const Var x = find_var(state, "x");
    CHECK(state.assert_comm_atom({x, Rel::Lt, Rational(0), kOne}, Module::Additive, {0}));
    CHECK(state.refuted());
}

TEST_CASE("rounds push the lower bound on x up the family") {
    auto state = family("1");
    REQUIRE(state.run_round());
    const auto signs = derived_texts(state, Module::Signs);
    CHECK(contains(signs, "u >= 0"));
    CHECK(contains(derived_texts(state, Module::Additive), "x > 1/2"));

    REQUIRE(state.run_round());
    CHECK(contains(derived_texts(state, Module::Multiplicative), "x < 3/2 * u"));  // u > 2/3 x
    CHECK(contains(derived_texts(state, Module::Additive), "x > 2/3"));
    CHECK_FALSE(state.refuted());
}

TEST_CASE("the family with bound 3/4 is refuted") {
    auto state = family("3/4");
    const Verdict v = refute(state, 30);
    CHECK(v.kind == VerdictKind::Refuted);
    CHECK(v.rounds >= 2);
    CHECK(v.rounds <= 4);
    CHECK(replay(state).empty());
}

TEST_CASE("the family with bound 1 never closes") {
    auto state = family("1");
    CHECK(refute(state, 30).kind == VerdictKind::RoundCapReached);
    CHECK(replay(state).empty());
}

TEST_CASE("splitting on signs is out of reach") {
    auto state = ProblemState::separate(comparisons({"x + y >= 2", "w + z >= 2", "u * x^2 < u * x", "u * y^2 < u * y",
                                                     "u * w^2 > u * w", "u * z^2 > u * z"}),
                                        {});
    const Verdict v = refute(state, 30);
    CHECK(v.kind == VerdictKind::Saturated);
    CHECK_FALSE(state.run_round());
    CHECK(replay(state).empty());
}

TEST_CASE("sequents") {
    SUBCASE("powers") {
        const auto r = prove_sequent(comparisons({"0 < x", "x < y"}),
                                     parse_comparison("(1 + x^2) / (2 + y)^17 < (1 + y^2) / (2 + x)^10"), {});
        CHECK(r.verdict.kind == VerdictKind::Refuted);
        CHECK(r.subtasks.size() == 1);
        CHECK(replay(r.subtasks[0].state).empty());
    }
    SUBCASE("scaled bound") {
        const auto r = prove_sequent(comparisons({"n <= (K/2) * x", "0 < n", "0 < C", "0 < eps", "eps < 1"}),
                                     parse_comparison("(1 + eps / (3 * (C + 3))) * n < K * x"), {});
        CHECK(r.verdict.kind == VerdictKind::Refuted);
    }
    SUBCASE("a square is out of reach") {
        const auto r = prove_sequent({}, parse_comparison("x^2 - 2*x + 1 >= 0"), {});
        CHECK(r.verdict.kind != VerdictKind::Refuted);
    }
    SUBCASE("an equality goal gives two tasks") {
        const auto r = prove_sequent(comparisons({"x <= y", "y <= x"}), parse_comparison("x + 1 = y + 1"), {});
        CHECK(r.verdict.kind == VerdictKind::Refuted);
        REQUIRE(r.subtasks.size() == 2);
        const auto half = prove_sequent(comparisons({"x <= y"}), parse_comparison("x = y"), {});
        CHECK(half.verdict.kind != VerdictKind::Refuted);
        CHECK(half.subtasks.size() == 2);
        CHECK(half.subtasks[half.deciding].verdict.kind != VerdictKind::Refuted);
    }
}

TEST_CASE("monotone functions transfer comparisons") {
    const auto decls = standard_decls();
    SUBCASE("exp forward") {
        auto r = prove_sequent(comparisons({"x < y"}), parse_comparison("exp(x) < exp(y)"), decls);
        CHECK(r.verdict.kind == VerdictKind::Refuted);
        CHECK(replay(r.subtasks[0].state).empty());
    }
    SUBCASE("exp backward") {
        auto r = prove_sequent(comparisons({"exp(x) <= exp(y)"}), parse_comparison("x <= y"), decls);
        CHECK(r.verdict.kind == VerdictKind::Refuted);
    }
    SUBCASE("exp is positive") {
        auto r = prove_sequent({}, parse_comparison("exp(x) > 0"), decls);
        CHECK(r.verdict.kind == VerdictKind::Refuted);
    }
    SUBCASE("cube") {
        auto r = prove_sequent(comparisons({"x < 2 * y"}), parse_comparison("cube(x) < cube(2 * y)"), decls);
        CHECK(r.verdict.kind == VerdictKind::Refuted);
        auto sign = prove_sequent({}, parse_comparison("cube(x) > 0"), decls);
        CHECK(sign.verdict.kind != VerdictKind::Refuted);
    }
    SUBCASE("a scaled comparison says nothing about the applications") {
        auto r = prove_sequent(comparisons({"2 * x < y"}), parse_comparison("f(x) < f(y)"), decls);
        CHECK(r.verdict.kind != VerdictKind::Refuted);
        auto same = prove_sequent(comparisons({"x < y"}), parse_comparison("f(2 * x) < f(y)"), decls);
        CHECK(same.verdict.kind != VerdictKind::Refuted);
    }
    SUBCASE("equal arguments give equal values") {
        auto r = prove_sequent({}, parse_comparison("f(x + x) = f(2 * x)"), decls);
        CHECK(r.verdict.kind == VerdictKind::Refuted);
    }
    SUBCASE("decreasing") {
        auto r = prove_sequent(comparisons({"x < y"}), parse_comparison("g(x) > g(y)"), decls);
        CHECK(r.verdict.kind == VerdictKind::Refuted);
    }
}

TEST_CASE("reports are deterministic") {
    auto run = [] {
        const auto r = prove_sequent(comparisons({"0 < x", "x < y"}),
                                     parse_comparison("(1 + x^2) / (2 + exp(y)) < (2 + y^2) / (1 + exp(x))"),
                                     standard_decls());
        return report_json(r).dump(2);
    };
    CHECK(run() == run());
}

// Hypotheses that all hold at a known point can never be refuted, and every
// derived comparison must hold there too.
TEST_CASE("derived facts hold at a satisfying point") {
    std::mt19937 rng(99);
    testkit::TermShape shape;
    shape.vars = {"x", "y", "z"};
    shape.functions = {"f", "g", "cube"};
    shape.max_exponent = 2;
    const auto functions = testkit::standard_functions();
    const auto decls = standard_decls();
    int problems = 0;
    std::size_t derived = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Assignment env;
        for (const auto &v : shape.vars) env[v] = testkit::nonzero_rational(rng, 5, 3);
        std::vector<Comparison> hyps;
        for (int k = 0; k < 4; ++k) {
            const RawTerm s = testkit::random_term(rng, 2, shape);
            const RawTerm t = testkit::random_term(rng, 2, shape);
            if (testkit::touches_zero_denominator(s, env, &functions) ||
                testkit::touches_zero_denominator(t, env, &functions)) {
                continue;
            }
            const auto order = s.evaluate(env, &functions) <=> t.evaluate(env, &functions);
            const int c = order < 0 ? -1 : order > 0 ? 1 : 0;
            Rel rel = c < 0 ? Rel::Lt : c > 0 ? Rel::Gt : Rel::Eq;
            if (c != 0 && k % 2 == 1) rel = c < 0 ? Rel::Le : Rel::Ge;
            hyps.push_back({s, rel, t, s.to_string() + " " + symbol(rel) + " " + t.to_string()});
        }
        std::optional<ProblemState> state;
        try {
            state.emplace(ProblemState::separate(hyps, decls));
        } catch (const TermError &) {
            continue;
        }
        Verdict verdict;
        try {
            verdict = refute(*state, 3);
        } catch (const ResourceLimit &) {
            continue;
        }
        ++problems;
        derived += state->derived_atom_count();
        std::string context;
        for (const auto &h : hyps) context += h.text + "; ";
        REQUIRE_MESSAGE(verdict.kind != VerdictKind::Refuted, context);
        const auto values = testkit::named_values(*state, env, &functions);
        for (const auto &f : state->facts()) {
            if (const auto *atom = std::get_if<CommAtom>(&f.payload)) {
                REQUIRE_MESSAGE(testkit::atom_holds(*atom, values), context << " fact " << f.id << ": " << f.derived);
            }
        }
        const auto failures = replay(*state);
        REQUIRE_MESSAGE(failures.empty(), context << (failures.empty() ? "" : failures[0].reason));
    }
    CHECK(problems >= 200);
    MESSAGE("derived " << derived << " atoms over " << problems << " problems");
    CHECK(derived >= 5 * static_cast<std::size_t>(problems));
}
