#include "doctest.h"
#include "oracles.hpp"

#include "ineq/linarith.hpp"

#include <random>

using namespace ineq;
using namespace ineq::linarith;

namespace {

constexpr Var X{1};
constexpr Var Y{2};
constexpr Var Z{3};
constexpr Var W{4};

LinAtom row(std::initializer_list<std::pair<Var, long>> terms, Rel rel, long constant = 0) {
    LinAtom a;
    for (const auto &[v, c] : terms) a.combo[v] += Rational(c);
    if (constant != 0) a.combo[kOne] += Rational(constant);
    a.rel = rel;
    return a;
}

LinSystem system_of(const std::vector<LinAtom> &atoms) {
    LinSystem s;
    for (const auto &a : atoms) s.add(a);
    return s;
}

}  // namespace

TEST_CASE("eliminating a variable between two strict bounds") {
    // y < x, x < z  ==>  y < z
    const auto sys = system_of({row({{Y, 1}, {X, -1}}, Rel::Lt), row({{X, 1}, {Z, -1}}, Rel::Lt)});
    const auto out = fm_eliminate(sys, X);
    REQUIRE(out.size() == 1);
    const auto &a = out.atoms().front();
    CHECK(a.rel == Rel::Lt);
    CHECK(a.combo.at(Y) == Rational(1));
    CHECK(a.combo.at(Z) == Rational(-1));
    CHECK_FALSE(a.combo.contains(X));
}

TEST_CASE("equalities are substituted") {
    // x = y + 1, x < z  ==>  y + 1 < z
    const auto sys = system_of({row({{X, 1}, {Y, -1}}, Rel::Eq, -1), row({{X, 1}, {Z, -1}}, Rel::Lt)});
    const auto out = fm_eliminate(sys, X);
    REQUIRE(out.size() == 1);
    const auto &a = out.atoms().front();
    CHECK(a.rel == Rel::Lt);
    CHECK(a.combo.at(Y) == Rational(1));
    CHECK(a.combo.at(kOne) == Rational(1));
}

TEST_CASE("empty system stays empty") {
    CHECK(fm_eliminate(LinSystem{}, X).empty());
    CHECK_FALSE(is_infeasible(LinSystem{}));
    CHECK(project_to_pair(LinSystem{}, X, Y).atoms.empty());
}

TEST_CASE("basic feasibility") {
    CHECK(is_infeasible(system_of({row({{X, 1}, {Y, -1}}, Rel::Lt), row({{Y, 1}, {X, -1}}, Rel::Lt)})));
    CHECK_FALSE(is_infeasible(system_of({row({{X, 1}}, Rel::Le, -1), row({{X, -1}}, Rel::Le, 1)})));
    CHECK(is_infeasible(system_of({row({{X, 1}}, Rel::Lt, -1), row({{X, -1}}, Rel::Le, 1)})));
}

TEST_CASE("provenance of a contradiction") {
    auto a = row({{X, 1}, {Y, -1}}, Rel::Lt);
    a.origins = {3};
    auto b = row({{Y, 1}, {X, -1}}, Rel::Lt);
    b.origins = {7};
    auto c = row({{Z, 1}}, Rel::Lt);
    c.origins = {9};
    const auto r = check_feasibility(system_of({a, b, c}));
    CHECK(r.infeasible);
    CHECK(r.origins == Provenance{3, 7});
}

TEST_CASE("subsumption keeps the stronger of parallel bounds") {
    LinSystem s;
    s.add(row({{X, 1}}, Rel::Le, -2));  // x <= 2
    s.add(row({{X, 1}}, Rel::Le, -1));  // x <= 1
    s.add(row({{X, 2}}, Rel::Lt, -2));  // x < 1
    REQUIRE(s.size() == 1);
    CHECK(s.atoms()[0].rel == Rel::Lt);
    CHECK(s.atoms()[0].combo.at(kOne) == Rational(-1));
}

TEST_CASE("atom cap raises a resource limit") {
    LinSystem s(3);
    s.add(row({{X, 1}}, Rel::Le));
    s.add(row({{Y, 1}}, Rel::Le));
    s.add(row({{Z, 1}}, Rel::Le));
    CHECK_THROWS_AS(s.add(row({{W, 1}}, Rel::Le)), ResourceLimit);
}

TEST_CASE("pair projection: two lower rays keep the stronger") {
    // u > 2v, u > 3v, v > 0  ==>  {v > 0, u > 3v}
    const Var u = X;
    const Var v = Y;
    const auto sys = system_of({row({{u, -1}, {v, 2}}, Rel::Lt), row({{u, -1}, {v, 3}}, Rel::Lt),
                                row({{v, -1}}, Rel::Lt)});
    const auto p = project_to_pair(sys, u, v);
    REQUIRE_FALSE(p.infeasible);
    REQUIRE(p.atoms.size() == 2);
    CHECK(std::find(p.atoms.begin(), p.atoms.end(), CommAtom{u, Rel::Gt, Rational(3), v}) != p.atoms.end());
    CHECK(std::find(p.atoms.begin(), p.atoms.end(), CommAtom{v, Rel::Gt, Rational(0), kOne}) != p.atoms.end());
}

TEST_CASE("pair projection through an intermediate variable") {
    // u <= v + w, w <= v  ==>  u <= 2v
    const Var u = X;
    const Var v = Y;
    const Var w = Z;
    const auto sys = system_of({row({{u, 1}, {v, -1}, {w, -1}}, Rel::Le), row({{w, 1}, {v, -1}}, Rel::Le)});
    const auto p = project_to_pair(sys, u, v);
    REQUIRE(p.atoms.size() == 1);
    CHECK(p.atoms[0] == CommAtom{u, Rel::Le, Rational(2), v});
}

TEST_CASE("pair projection of an infeasible system") {
    const auto sys = system_of({row({{X, 1}}, Rel::Lt), row({{X, -1}}, Rel::Lt)});
    const auto p = project_to_pair(sys, Y, kOne);
    CHECK(p.infeasible);
    REQUIRE(p.atoms.size() == 2);
    CHECK(p.atoms[0].rel == Rel::Lt);
    CHECK(p.atoms[1].rel == Rel::Gt);
}

TEST_CASE("pair projection with constant bounds") {
    // 1 <= x < 3
    const auto sys = system_of({row({{X, -1}}, Rel::Le, 1), row({{X, 1}}, Rel::Lt, -3)});
    const auto p = project_to_pair(sys, X, kOne);
    REQUIRE(p.atoms.size() == 2);
    CHECK(std::find(p.atoms.begin(), p.atoms.end(), CommAtom{X, Rel::Ge, Rational(1), kOne}) != p.atoms.end());
    CHECK(std::find(p.atoms.begin(), p.atoms.end(), CommAtom{X, Rel::Lt, Rational(3), kOne}) != p.atoms.end());
}

TEST_CASE("pair projection of a line") {
    const auto sys = system_of({row({{X, 1}, {Y, -2}}, Rel::Eq)});
    const auto p = project_to_pair(sys, X, Y);
    REQUIRE(p.atoms.size() == 1);
    CHECK(p.atoms[0] == CommAtom{X, Rel::Eq, Rational(2), Y});
}

TEST_CASE("is_infeasible agrees with the vertex oracle") {
    std::mt19937_64 rng(20241);
    std::uniform_int_distribution<int> nv(1, 4);
    std::uniform_int_distribution<int> na(1, 6);
    int infeasible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto atoms = oracle::random_atoms(rng, nv(rng), na(rng));
        const bool expected = !oracle::feasible(atoms);
        INFO("trial " << trial);
        CHECK(is_infeasible(system_of(atoms)) == expected);
        infeasible += expected ? 1 : 0;
    }
    CHECK(infeasible > 20);
}

TEST_CASE("fm_eliminate is sound and exact for one variable") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const auto atoms = oracle::random_atoms(rng, 3, 5);
        const auto sys = system_of(atoms);
        const auto projected = fm_eliminate(sys, X);
        // the projection is feasible exactly when the original is
        std::vector<LinAtom> proj(projected.atoms().begin(), projected.atoms().end());
        CHECK(oracle::feasible(atoms) == oracle::feasible(proj));
        // sound: each projected atom is entailed by the original
        for (const auto &a : proj) {
            if (a.combo.empty()) continue;
            auto trial_atoms = atoms;
            LinAtom neg = a;
            for (auto &kv : neg.combo) kv.second = -kv.second;
            if (a.rel == Rel::Eq) continue;
            neg.rel = a.rel == Rel::Lt ? Rel::Le : Rel::Lt;
            trial_atoms.push_back(neg);
            CHECK_FALSE(oracle::feasible(trial_atoms));
        }
    }
}

TEST_CASE("project_to_pair outputs are entailed and maximal") {
    std::mt19937_64 rng(4242);
    const Rational eps(1, 1000);
    int checked = 0;
    for (int trial = 0; trial < 250; ++trial) {
        const auto atoms = oracle::random_atoms(rng, 4, 5);
        const auto sys = system_of(atoms);
        const bool use_one = trial % 3 == 0;
        const Var u = X;
        const Var v = use_one ? kOne : Y;
        const auto p = project_to_pair(sys, u, v);
        INFO("trial " << trial);
        CHECK(p.infeasible == !oracle::feasible(atoms));
        if (p.infeasible) continue;
        CHECK(p.atoms.size() <= 2);
        for (std::size_t i = 0; i < p.atoms.size(); ++i) {
            const auto &a = p.atoms[i];
            CHECK(oracle::entailed(atoms, a));
            // premises alone entail the atom
            std::vector<LinAtom> premises;
            for (const auto &row : atoms) {
                if (std::includes(p.premises[i].begin(), p.premises[i].end(), row.origins.begin(),
                                  row.origins.end())) {
                    premises.push_back(row);
                }
            }
            CHECK(oracle::entailed(premises, a));
            if (a.coeff.is_zero() || a.rel == Rel::Eq) continue;
            // strengthening the coefficient by 1/1000 is no longer entailed
            const bool upper = a.rel == Rel::Lt || a.rel == Rel::Le;
            const Rational sharper = upper ? a.coeff - eps : a.coeff + eps;
            // with a non-constant rhs the strengthening direction depends on the sign of rhs
            if (!a.rhs.is_one()) {
                CHECK_FALSE((oracle::entailed(atoms, {a.lhs, a.rel, a.coeff - eps, a.rhs}) &&
                             oracle::entailed(atoms, {a.lhs, a.rel, a.coeff + eps, a.rhs})));
            } else {
                CHECK_FALSE(oracle::entailed(atoms, {a.lhs, a.rel, sharper, a.rhs}));
            }
            ++checked;
        }
    }
    CHECK(checked > 50);
}
