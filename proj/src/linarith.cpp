#include "ineq/linarith.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <tuple>

namespace ineq::linarith {

namespace {

struct Vec2 {
    Rational a;
    Rational b;
};

Rational cross(const Vec2 &p, const Vec2 &q) {
    return p.a * q.b - p.b * q.a;
}

Rational dot(const Vec2 &p, const Vec2 &q) {
    return p.a * q.a + p.b * q.b;
}

// 0 for angles in [0, pi), 1 for [pi, 2 pi).
int half(const Vec2 &v) {
    if (v.b.sign() > 0 || (v.b.is_zero() && v.a.sign() > 0)) return 0;
    return 1;
}

bool angle_less(const Vec2 &p, const Vec2 &q) {
    const int hp = half(p);
    const int hq = half(q);
    if (hp != hq) return hp < hq;
    return cross(p, q).sign() > 0;
}

bool same_direction(const Vec2 &p, const Vec2 &q) {
    return cross(p, q).is_zero() && dot(p, q).sign() > 0;
}

// Returns false when the atom is a true constant and should be dropped.
bool normalize(LinAtom &atom) {
    for (auto it = atom.combo.begin(); it != atom.combo.end();) {
        it = it->second.is_zero() ? atom.combo.erase(it) : std::next(it);
    }
    auto lead = std::find_if(atom.combo.begin(), atom.combo.end(),
                             [](const auto &kv) { return !kv.first.is_one(); });
    if (lead == atom.combo.end()) {
        const auto it = atom.combo.find(kOne);
        const Rational c = it == atom.combo.end() ? Rational(0) : it->second;
        bool truth = false;
        switch (atom.rel) {
        case Rel::Lt: truth = c.sign() < 0; break;
        case Rel::Le: truth = c.sign() <= 0; break;
        default: truth = c.is_zero(); break;
        }
        if (truth) return false;
        atom.combo.clear();
        atom.rel = Rel::Lt;
        return true;
    }
    const Rational s = atom.rel == Rel::Eq ? lead->second : lead->second.abs();
    if (s != Rational(1)) {
        for (auto &kv : atom.combo) kv.second /= s;
    }
    return true;
}

Rational coeff_of(const LinAtom &atom, Var v) {
    auto it = atom.combo.find(v);
    return it == atom.combo.end() ? Rational(0) : it->second;
}

LinAtom combine(const LinAtom &p, const Rational &mp, const LinAtom &q, const Rational &mq) {
    LinAtom out;
    out.combo = p.combo;
    for (auto &kv : out.combo) kv.second *= mp;
    for (const auto &[v, c] : q.combo) out.combo[v] += c * mq;
    if (p.rel == Rel::Eq && q.rel == Rel::Eq) out.rel = Rel::Eq;
    else if (p.rel == Rel::Lt || q.rel == Rel::Lt) out.rel = Rel::Lt;
    else out.rel = Rel::Le;
    out.origins = merge(p.origins, q.origins);
    return out;
}

Var choose_variable(const LinSystem &sys, const std::vector<Var> &candidates) {
    std::optional<std::tuple<int, long, std::uint32_t>> best;
    Var pick = candidates.front();
    for (Var v : candidates) {
        long pos = 0;
        long neg = 0;
        bool eq = false;
        for (const auto &a : sys.atoms()) {
            auto it = a.combo.find(v);
            if (it == a.combo.end()) continue;
            if (a.rel == Rel::Eq) eq = true;
            else if (it->second.sign() > 0) ++pos;
            else ++neg;
        }
        const auto score = std::make_tuple(eq ? 0 : 1, eq ? pos + neg : pos * neg - pos - neg, v.id);
        if (!best || score < *best) {
            best = score;
            pick = v;
        }
    }
    return pick;
}

LinSystem only_contradiction(const LinSystem &sys) {
    LinSystem out(sys.atom_cap());
    out.add(*sys.contradiction());
    return out;
}

}  // namespace

bool LinAtom::is_constant() const {
    return std::all_of(combo.begin(), combo.end(),
                       [](const auto &kv) { return kv.first.is_one() || kv.second.is_zero(); });
}

LinAtom from_comm(const CommAtom &atom, Provenance origins) {
    LinAtom out;
    out.combo[atom.lhs] += Rational(1);
    out.combo[atom.rhs] -= atom.coeff;
    out.origins = std::move(origins);
    switch (atom.rel) {
    case Rel::Lt:
    case Rel::Le:
    case Rel::Eq:
        out.rel = atom.rel;
        break;
    case Rel::Gt:
    case Rel::Ge:
        for (auto &kv : out.combo) kv.second = -kv.second;
        out.rel = atom.rel == Rel::Gt ? Rel::Lt : Rel::Le;
        break;
    }
    return out;
}

LinAtom definition(Var name, const std::map<Var, Rational> &combo, Provenance origins) {
    LinAtom out;
    out.combo[name] += Rational(1);
    for (const auto &[v, c] : combo) out.combo[v] -= c;
    out.rel = Rel::Eq;
    out.origins = std::move(origins);
    return out;
}

void LinSystem::add(LinAtom atom) {
    if (!normalize(atom)) return;
    Key key{atom.rel == Rel::Eq, {}};
    Rational constant;
    for (const auto &[v, c] : atom.combo) {
        if (v.is_one()) constant = c;
        else key.second.emplace_back(v.id, c);
    }
    if (key.second.empty()) {
        // false constant; keep the first one found
        if (contradiction() == nullptr) {
            index_.emplace(key, atoms_.size());
            atoms_.push_back(std::move(atom));
        }
        return;
    }
    auto it = index_.find(key);
    if (it == index_.end()) {
        index_.emplace(std::move(key), atoms_.size());
        atoms_.push_back(std::move(atom));
        if (atoms_.size() > cap_) {
            throw ResourceLimit("linear system exceeded " + std::to_string(cap_) + " atoms");
        }
        return;
    }
    LinAtom &old = atoms_[it->second];
    const Rational old_constant = coeff_of(old, kOne);
    if (atom.rel == Rel::Eq) {
        if (old_constant != constant) {
            LinAtom bottom;
            bottom.rel = Rel::Lt;
            bottom.origins = merge(old.origins, atom.origins);
            add(std::move(bottom));
        }
        return;
    }
    // d + c*1 rel 0: a larger c is the stronger bound
    const bool stronger = constant > old_constant ||
                          (constant == old_constant && atom.rel == Rel::Lt && old.rel == Rel::Le);
    if (stronger) old = std::move(atom);
}

std::vector<Var> LinSystem::variables() const {
    std::vector<Var> out;
    for (const auto &a : atoms_) {
        for (const auto &kv : a.combo) {
            if (!kv.first.is_one()) out.push_back(kv.first);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const LinAtom *LinSystem::contradiction() const {
    for (const auto &a : atoms_) {
        if (a.combo.empty()) return &a;
    }
    return nullptr;
}

namespace {

LinSystem eliminate_any(const LinSystem &sys, Var x) {
    LinSystem out(sys.atom_cap());
    const LinAtom *pivot = nullptr;
    for (const auto &a : sys.atoms()) {
        if (a.rel != Rel::Eq || !a.combo.contains(x)) continue;
        if (pivot == nullptr || a.combo.size() < pivot->combo.size()) pivot = &a;
    }
    if (pivot != nullptr) {
        const Rational px = coeff_of(*pivot, x);
        for (const auto &a : sys.atoms()) {
            if (&a == pivot) continue;
            const Rational ax = coeff_of(a, x);
            if (ax.is_zero()) {
                out.add(a);
                continue;
            }
            LinAtom r = combine(a, Rational(1), *pivot, -(ax / px));
            r.rel = a.rel;
            r.combo.erase(x);
            out.add(std::move(r));
        }
        return out;
    }

    std::vector<const LinAtom *> lower;
    std::vector<const LinAtom *> upper;
    for (const auto &a : sys.atoms()) {
        const Rational ax = coeff_of(a, x);
        if (ax.is_zero()) out.add(a);
        else if (ax.sign() > 0) upper.push_back(&a);
        else lower.push_back(&a);
    }
    for (const LinAtom *p : upper) {
        const Rational px = coeff_of(*p, x);
        for (const LinAtom *q : lower) {
            const Rational qx = coeff_of(*q, x);
            LinAtom r = combine(*p, -qx, *q, px);
            r.combo.erase(x);
            out.add(std::move(r));
        }
    }
    return out;
}

}  // namespace

LinSystem fm_eliminate(const LinSystem &sys, Var x) {
    if (x.is_one()) {
        throw std::invalid_argument("the constant 1 cannot be eliminated");
    }
    return eliminate_any(sys, x);
}

LinSystem project_onto(const LinSystem &sys, const std::vector<Var> &keep, bool eliminate_one) {
    LinSystem current = sys;
    if (current.contradiction()) return only_contradiction(current);
    while (true) {
        std::vector<Var> candidates;
        for (Var v : current.variables()) {
            if (std::find(keep.begin(), keep.end(), v) == keep.end()) candidates.push_back(v);
        }
        if (candidates.empty()) break;
        current = eliminate_any(current, choose_variable(current, candidates));
        if (current.contradiction()) return only_contradiction(current);
    }
    if (eliminate_one && std::find(keep.begin(), keep.end(), kOne) == keep.end()) {
        // constants are evaluated against 1 > 0, so rename 1 to an ordinary
        // variable before eliminating it
        const Var stand_in{std::numeric_limits<std::uint32_t>::max()};
        LinSystem renamed(current.atom_cap());
        for (LinAtom a : current.atoms()) {
            if (auto it = a.combo.find(kOne); it != a.combo.end()) {
                a.combo[stand_in] = it->second;
                a.combo.erase(it);
            }
            renamed.add(std::move(a));
        }
        LinAtom positive;
        positive.combo[stand_in] = Rational(-1);
        positive.rel = Rel::Lt;
        renamed.add(std::move(positive));
        current = eliminate_any(renamed, stand_in);
        if (current.contradiction()) return only_contradiction(current);
    }
    return current;
}

FeasibilityResult check_feasibility(const LinSystem &sys) {
    const LinSystem projected = project_onto(sys, {});
    if (const LinAtom *bottom = projected.contradiction()) {
        return {true, bottom->origins};
    }
    return {};
}

bool is_infeasible(const LinSystem &sys) {
    return check_feasibility(sys).infeasible;
}

std::optional<Provenance> entailment_premises(const LinSystem &sys, const CommAtom &atom) {
    auto refutes = [&](Rel negated) -> std::optional<Provenance> {
        LinSystem trial = sys;
        trial.add(from_comm({atom.lhs, negated, atom.coeff, atom.rhs}));
        auto r = check_feasibility(trial);
        if (!r.infeasible) return std::nullopt;
        return r.origins;
    };
    if (atom.rel == Rel::Eq) {
        auto below = refutes(Rel::Lt);
        if (!below) return std::nullopt;
        auto above = refutes(Rel::Gt);
        if (!above) return std::nullopt;
        return merge(*below, *above);
    }
    return refutes(negate(atom.rel));
}

bool entails(const LinSystem &sys, const CommAtom &atom) {
    return entailment_premises(sys, atom).has_value();
}

namespace {

struct Extremal {
    Vec2 normal;
    bool equality = false;
};

// Extremal generators of the cone spanned by `gens` (nonzero vectors).
std::vector<Extremal> cone_extremals(std::vector<Vec2> gens) {
    std::sort(gens.begin(), gens.end(), angle_less);
    std::vector<Vec2> dirs;
    for (auto &g : gens) {
        if (dirs.empty() || !same_direction(dirs.back(), g)) dirs.push_back(g);
    }
    if (dirs.size() > 1 && same_direction(dirs.front(), dirs.back())) dirs.pop_back();
    if (dirs.empty()) return {};
    if (dirs.size() == 1) return {{dirs[0], false}};

    const std::size_t n = dirs.size();
    std::vector<int> gap(n);  // gap after dirs[i]: -1 below pi, 0 exactly pi, 1 above pi
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 &p = dirs[i];
        const Vec2 &q = dirs[(i + 1) % n];
        const int c = cross(p, q).sign();
        gap[i] = c > 0 ? -1 : (c < 0 ? 1 : 0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (gap[i] == 1) {
            return {{dirs[(i + 1) % n], false}, {dirs[i], false}};
        }
    }
    std::vector<std::size_t> straight;
    for (std::size_t i = 0; i < n; ++i) {
        if (gap[i] == 0) straight.push_back(i);
    }
    if (straight.size() >= 2 && n == 2) {
        return {{dirs[0], true}};
    }
    if (straight.size() == 1) {
        // the feasible set is a ray along d; report it as a sign condition
        const Vec2 &line = dirs[straight[0]];
        Vec2 d{-line.b, line.a};
        for (const auto &g : dirs) {
            if (!cross(line, g).is_zero()) {
                if (dot(d, g).sign() < 0) d = Vec2{line.b, -line.a};
                break;
            }
        }
        const Vec2 sign_normal = d.b.is_zero() ? Vec2{Rational(d.a.sign()), Rational(0)}
                                               : Vec2{Rational(0), Rational(d.b.sign())};
        return {{line, true}, {sign_normal, false}};
    }
    return {{Vec2{Rational(1), Rational(0)}, true}, {Vec2{Rational(0), Rational(1)}, true}};
}

LinAtom half_plane(Var a, Var b, const Vec2 &n, Rel rel) {
    // n . (a, b) rel 0, expressed as combo rel' 0 with rel' in {Lt, Le, Eq}
    LinAtom atom;
    atom.combo[a] += n.a;
    atom.combo[b] += n.b;
    if (rel == Rel::Gt || rel == Rel::Ge) {
        for (auto &kv : atom.combo) kv.second = -kv.second;
        atom.rel = rel == Rel::Gt ? Rel::Lt : Rel::Le;
    } else {
        atom.rel = rel;
    }
    return atom;
}

LinSystem system_of(const std::vector<LinAtom> &rows) {
    LinSystem out;
    for (const auto &r : rows) out.add(r);
    return out;
}

Provenance minimal_premises(const std::vector<LinAtom> &rows, const CommAtom &atom) {
    std::vector<LinAtom> needed = rows;
    for (std::size_t i = 0; i < needed.size();) {
        std::vector<LinAtom> trial = needed;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (entails(system_of(trial), atom)) needed = std::move(trial);
        else ++i;
    }
    Provenance out;
    for (const auto &r : needed) out = merge(out, r.origins);
    return out;
}

}  // namespace

PairProjection project_to_pair(const LinSystem &sys, Var u, Var v) {
    if (u == v) throw std::invalid_argument("project_to_pair needs two distinct variables");
    Var a = u;
    Var b = v;
    if (a.is_one()) std::swap(a, b);

    const LinSystem projected = project_onto(sys, {a, b}, !b.is_one());
    std::vector<LinAtom> rows(projected.atoms().begin(), projected.atoms().end());

    PairProjection out;
    const LinSystem plane = system_of(rows);
    if (const auto feas = check_feasibility(plane); feas.infeasible) {
        out.infeasible = true;
        out.atoms = {{a, Rel::Lt, Rational(0), kOne}, {a, Rel::Gt, Rational(0), kOne}};
        out.premises = {feas.origins, feas.origins};
        return out;
    }

    std::vector<Vec2> gens;
    for (const auto &r : plane.atoms()) {
        Vec2 n{-coeff_of(r, a), -coeff_of(r, b)};
        if (n.a.is_zero() && n.b.is_zero()) continue;
        if (r.rel == Rel::Eq) gens.push_back({-n.a, -n.b});
        gens.push_back(std::move(n));
    }
    if (b.is_one()) gens.push_back({Rational(0), Rational(1)});

    for (const auto &ext : cone_extremals(std::move(gens))) {
        Rel rel = Rel::Eq;
        if (!ext.equality) {
            LinSystem trial = plane;
            trial.add(half_plane(a, b, ext.normal, Rel::Le));
            rel = is_infeasible(trial) ? Rel::Gt : Rel::Ge;
        }
        // n.a * a + n.b * b rel 0
        CommAtom atom;
        if (!ext.normal.a.is_zero()) {
            atom = {a, ext.normal.a.sign() > 0 ? rel : flip(rel), -(ext.normal.b / ext.normal.a), b};
        } else {
            if (b.is_one()) continue;
            atom = {b, ext.normal.b.sign() > 0 ? rel : flip(rel), Rational(0), kOne};
        }
        atom = canonical(atom);
        out.premises.push_back(minimal_premises(rows, atom));
        out.atoms.push_back(atom);
    }
    return out;
}

}  // namespace ineq::linarith
