#include "ineq/monofun.hpp"

#include <algorithm>

namespace ineq::monofun {

namespace {

// Relation between the two arguments a*p and b*q.
std::optional<Known> compare_arguments(const Application &s, const Application &t,
                                       const RelationQuery &query) {
    const auto probe = compare_scaled(s.coeff, s.argument, Rel::Lt, t.coeff, t.argument);
    if (probe.kind != ScaledComparison::Kind::Atom) {
        for (Rel r : {Rel::Lt, Rel::Eq, Rel::Gt}) {
            if (compare_scaled(s.coeff, s.argument, r, t.coeff, t.argument).kind ==
                ScaledComparison::Kind::True) {
                return Known{r, {}};
            }
        }
        return std::nullopt;
    }
    // probe.atom is `a*p < b*q` rewritten, possibly with its sides flipped
    auto k = query(probe.atom.lhs, probe.atom.coeff, probe.atom.rhs);
    if (!k) return std::nullopt;
    return Known{probe.atom.rel == Rel::Lt ? k->rel : flip(k->rel), k->origins};
}

}  // namespace

std::vector<SourcedAtom> derive_mono_facts(const std::vector<MonoDecl> &decls,
                                           const std::vector<Application> &apps,
                                           const RelationQuery &query) {
    std::vector<SourcedAtom> out;
    auto decl_of = [&](const std::string &symbol) -> const MonoDecl * {
        auto it = std::find_if(decls.begin(), decls.end(), [&](const MonoDecl &d) { return d.symbol == symbol; });
        return it == decls.end() ? nullptr : &*it;
    };
    for (const auto &app : apps) {
        const MonoDecl *d = decl_of(app.symbol);
        if (d == nullptr) continue;
        if (d->range == RangeSign::Positive) out.push_back({{app.name, Rel::Gt, Rational(0), kOne}, app.origins});
        if (d->range == RangeSign::Nonnegative) out.push_back({{app.name, Rel::Ge, Rational(0), kOne}, app.origins});
    }
    for (std::size_t i = 0; i < apps.size(); ++i) {
        const MonoDecl *d = decl_of(apps[i].symbol);
        if (d == nullptr) continue;
        for (std::size_t j = i + 1; j < apps.size(); ++j) {
            const Application &s = apps[i];
            const Application &t = apps[j];
            if (t.symbol != s.symbol) continue;
            const Provenance defs = merge(s.origins, t.origins);
            // arguments to values
            if (auto k = compare_arguments(s, t, query)) {
                const Rel r = d->direction == Direction::Increasing ? k->rel : flip(k->rel);
                out.push_back({canonical({s.name, r, Rational(1), t.name}), merge(defs, k->origins)});
            }
            // values back to arguments
            if (auto k = query(s.name, Rational(1), t.name)) {
                const Rel r = d->direction == Direction::Increasing ? k->rel : flip(k->rel);
                const auto cmp = compare_scaled(s.coeff, s.argument, r, t.coeff, t.argument);
                if (cmp.kind == ScaledComparison::Kind::Atom) {
                    out.push_back({cmp.atom, merge(defs, k->origins)});
                } else if (cmp.kind == ScaledComparison::Kind::False) {
                    out.push_back({{kOne, Rel::Lt, Rational(0), kOne}, merge(defs, k->origins)});
                }
            }
        }
    }
    return out;
}

}  // namespace ineq::monofun
