#include "doctest.h"
#include "testkit.hpp"

#include "ineq/normal_form.hpp"
#include "ineq/problem.hpp"

#include <algorithm>
#include <random>

using namespace ineq;

namespace {

NormalTerm nf(TermStore &store, std::string_view text) {
    return store.normalize(parse_expression(text));
}

// Preterms collected while normalizing random terms, capped at rank 4.
std::vector<PretermId> preterm_corpus(TermStore &store, std::size_t limit) {
    std::mt19937 rng(11);
    testkit::TermShape shape;
    shape.functions = {"f"};
    for (const auto &v : shape.vars) store.variable(v);
    for (int i = 0; i < 400 && store.size() < 4 * limit; ++i) {
        try {
            store.normalize(testkit::random_term(rng, 3, shape));
        } catch (const TermError &) {
        }
    }
    std::vector<PretermId> out;
    for (PretermId id = 0; id < store.size() && out.size() < limit; ++id) {
        if (store.rank(id) <= 4) out.push_back(id);
    }
    return out;
}

}  // namespace

TEST_CASE("constants and like terms collapse") {
    TermStore store;
    CHECK(store.render(nf(store, "2 * 2")) == "4");
    CHECK(nf(store, "2 * 2") == store.constant(Rational(4)));
    CHECK(store.render(nf(store, "x + x")) == "2 * x");
    CHECK(nf(store, "x - x").is_zero());
    CHECK(nf(store, "1 * x") == nf(store, "x"));
    CHECK(nf(store, "x / x") == store.constant(Rational(1)));
}

TEST_CASE("ordering of variables follows first appearance") {
    TermStore store;
    const PretermId x1 = store.variable("x1");
    const PretermId x2 = store.variable("x2");
    CHECK(store.precedes(x2, x1));
    CHECK_FALSE(store.precedes(x1, x2));
    CHECK(store.precedes(x1, store.one()));
    CHECK_FALSE(store.precedes(x1, x1));
}

TEST_CASE("sums of equal rank compare by coefficient vectors") {
    TermStore store;
    store.variable("x1");
    store.variable("x2");
    const NormalTerm a = nf(store, "x1 + 1/2 * x2");
    const NormalTerm b = nf(store, "x1 + 2/3 * x2");
    REQUIRE(a.coeff == Rational(1));
    REQUIRE(b.coeff == Rational(1));
    CHECK(store.precedes(a.body, b.body));
    CHECK_FALSE(store.precedes(b.body, a.body));
}

TEST_CASE("provable equality") {
    CHECK(equal_terms(parse_expression("(x + y)^2 * (y + x)^-1"), parse_expression("x + y")));
    CHECK(equal_terms(parse_expression("y + x"), parse_expression("x + y")));
    // products of sums are not expanded
    CHECK_FALSE(equal_terms(parse_expression("x * (1 + y)"), parse_expression("x + x*y")));
    CHECK_FALSE(equal_terms(parse_expression("(x + y)^2"), parse_expression("x^2 + 2*x*y + y^2")));
    CHECK(equal_terms(parse_expression("f(x + x)"), parse_expression("f(2*x)")));
    CHECK_FALSE(equal_terms(parse_expression("x * (1 + y)"), parse_expression("x + y")));
    CHECK_FALSE(equal_terms(parse_expression("f(x) + f(y)"), parse_expression("f(x + y)")));
}

TEST_CASE("zero denominators are rejected") {
    TermStore store;
    CHECK_THROWS_AS(nf(store, "x / (1 - 1)"), TermError);
    CHECK_THROWS_AS(store.invert(NormalTerm::zero()), TermError);
    CHECK_THROWS_AS(RawTerm::pow(RawTerm::var("x"), 0), TermError);
}

TEST_CASE("evaluation uses zero for division by zero") {
    TermStore store;
    const Assignment env{{"x", Rational(3, 2)}, {"y", Rational(0)}};
    CHECK(store.evaluate(nf(store, "x + x"), env) == Rational(3));
    CHECK(store.evaluate(nf(store, "x / y"), env) == Rational(0));
    CHECK(parse_expression("x / y").evaluate(env) == Rational(0));
}

TEST_CASE("normalization preserves values, is idempotent and well formed") {
    std::mt19937 rng(2024);
    testkit::TermShape shape;
    shape.functions = {"f", "cube"};
    const auto functions = testkit::standard_functions();
    TermStore store;
    int checked = 0;
    for (int i = 0; i < 1500; ++i) {
        const RawTerm t = testkit::random_term(rng, 4, shape);
        NormalTerm n;
        try {
            n = store.normalize(t);
        } catch (const TermError &) {
            continue;  // literal zero denominator
        }
        if (!n.is_zero()) REQUIRE(store.well_formed(n.body));
        const std::string text = store.render(n);
        REQUIRE_MESSAGE(store.normalize(parse_expression(text)) == n, text);
        for (int k = 0; k < 3; ++k) {
            const Assignment env = testkit::random_assignment(rng, shape.vars);
            if (testkit::touches_zero_denominator(t, env, &functions)) continue;
            REQUIRE_MESSAGE(store.evaluate(n, env, &functions) == t.evaluate(env, &functions), t.to_string());
            ++checked;
        }
    }
    CHECK(checked >= 1000);
}

TEST_CASE("sums and products absorb commutativity and associativity") {
    std::mt19937 rng(7);
    testkit::TermShape shape;
    TermStore store;
    for (int i = 0; i < 300; ++i) {
        const RawTerm a = testkit::random_term(rng, 2, shape);
        const RawTerm b = testkit::random_term(rng, 2, shape);
        const RawTerm c = testkit::random_term(rng, 2, shape);
        try {
            store.normalize(a);
            store.normalize(b);
            store.normalize(c);
        } catch (const TermError &) {
            continue;
        }
        {
            CHECK(store.normalize(a + b) == store.normalize(b + a));
            CHECK(store.normalize(a * b) == store.normalize(b * a));
            CHECK(store.normalize((a + b) + c) == store.normalize(a + (b + c)));
            CHECK(store.normalize((a * b) * c) == store.normalize(a * (b * c)));
            const Rational q = testkit::nonzero_rational(rng);
            CHECK(store.normalize(RawTerm::scale(q, a + b)) ==
                  store.normalize(RawTerm::scale(q, a) + RawTerm::scale(q, b)));
        }
    }
}

TEST_CASE("the preterm order is a strict total order") {
    TermStore store;
    const auto corpus = preterm_corpus(store, 120);
    REQUIRE(corpus.size() >= 60);
    for (PretermId s : corpus) {
        CHECK_FALSE(store.precedes(s, s));
        for (PretermId t : corpus) {
            const int st = store.compare(s, t);
            const int ts = store.compare(t, s);
            if (s == t) {
                REQUIRE(st == 0);
            } else {
                REQUIRE((st < 0) != (ts < 0));
                REQUIRE(st != 0);
            }
        }
    }
    for (PretermId a : corpus) {
        for (PretermId b : corpus) {
            if (!store.precedes(a, b)) continue;
            for (PretermId c : corpus) {
                if (store.precedes(b, c)) REQUIRE(store.precedes(a, c));
            }
        }
    }
}
