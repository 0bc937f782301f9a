#include "ineq/mularith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace ineq::mularith {

namespace {

constexpr std::uint8_t kBits[] = {SignSet::kNeg, SignSet::kZero, SignSet::kPos};

std::uint8_t bit_product(std::uint8_t a, std::uint8_t b) {
    if (a == SignSet::kZero || b == SignSet::kZero) return SignSet::kZero;
    return a == b ? SignSet::kPos : SignSet::kNeg;
}

int bit_rank(std::uint8_t b) {
    return b == SignSet::kNeg ? -1 : (b == SignSet::kZero ? 0 : 1);
}

// Can a value of sign a stand in relation rel to a value of sign b?
bool compatible(std::uint8_t a, Rel rel, std::uint8_t b) {
    const int ra = bit_rank(a);
    const int rb = bit_rank(b);
    if (ra < rb) return rel == Rel::Lt || rel == Rel::Le;
    if (ra > rb) return rel == Rel::Gt || rel == Rel::Ge;
    if (ra == 0) return !is_strict(rel);
    return true;
}

}  // namespace

SignSet SignSet::of(const Rational &value) {
    const int s = value.sign();
    return s < 0 ? neg() : (s == 0 ? zero() : pos());
}

SignSet SignSet::times(SignSet other) const {
    std::uint8_t out = 0;
    for (std::uint8_t a : kBits) {
        if (!contains(a)) continue;
        for (std::uint8_t b : kBits) {
            if (other.contains(b)) out |= bit_product(a, b);
        }
    }
    return SignSet(out);
}

SignSet SignSet::power(long exponent) const {
    if (exponent % 2 != 0) return *this;
    std::uint8_t out = bits_ & kZero;
    if (contains(kNeg) || contains(kPos)) out |= kPos;
    return SignSet(out);
}

SignSet SignSet::negated() const {
    std::uint8_t out = bits_ & kZero;
    if (contains(kNeg)) out |= kPos;
    if (contains(kPos)) out |= kNeg;
    return SignSet(out);
}

std::string SignSet::name() const {
    switch (bits_) {
    case 0: return "none";
    case kNeg: return "neg";
    case kZero: return "zero";
    case kPos: return "pos";
    case kNeg | kZero: return "nonpos";
    case kZero | kPos: return "nonneg";
    case kNeg | kPos: return "nonzero";
    default: return "unknown";
    }
}

SignEnv::SignEnv() {
    entries_[kOne] = {SignSet::pos(), {}};
}

const SignEntry &SignEnv::at(Var v) const {
    static const SignEntry unknown{};
    auto it = entries_.find(v);
    return it == entries_.end() ? unknown : it->second;
}

bool SignEnv::refine(Var v, SignSet set, const Provenance &origins) {
    SignEntry &e = entries_[v];
    const SignSet next = e.set.meet(set);
    if (next == e.set) return false;
    e.set = next;
    e.origins = merge(e.origins, origins);
    return true;
}

std::optional<SignSet> sign_from_bound(Rel rel, const Rational &c) {
    const int s = c.sign();
    switch (rel) {
    case Rel::Lt:
        if (s <= 0) return SignSet::neg();
        break;
    case Rel::Le:
        if (s < 0) return SignSet::neg();
        if (s == 0) return SignSet::nonpos();
        break;
    case Rel::Eq:
        return SignSet::of(c);
    case Rel::Ge:
        if (s > 0) return SignSet::pos();
        if (s == 0) return SignSet::nonneg();
        break;
    case Rel::Gt:
        if (s >= 0) return SignSet::pos();
        break;
    }
    return std::nullopt;
}

SignResult infer_signs(const std::vector<MultDef> &defs, const std::vector<SourcedAtom> &comm) {
    SignResult result;
    SignEnv &env = result.env;
    auto refine = [&](Var v, SignSet set, const Provenance &origins) {
        if (v.is_one()) {
            if (!SignSet::pos().subset_of(set)) result.conflict = origins;
            return false;
        }
        const bool changed = env.refine(v, set, origins);
        if (env.sign(v).empty()) result.conflict = env.at(v).origins;
        return changed;
    };

    bool changed = true;
    while (changed && !result.conflict) {
        changed = false;
        for (const auto &[atom, origins] : comm) {
            if (atom.lhs.is_one()) continue;
            if (atom.rhs.is_one() || atom.coeff.is_zero()) {
                if (auto s = sign_from_bound(atom.rel, atom.coeff)) {
                    changed |= refine(atom.lhs, *s, origins);
                }
            } else {
                const SignSet sx = env.sign(atom.lhs);
                const SignSet sy = env.sign(atom.rhs);
                const SignSet st = atom.coeff.sign() > 0 ? sy : sy.negated();
                std::uint8_t ax = 0;
                std::uint8_t at = 0;
                for (std::uint8_t a : kBits) {
                    if (!sx.contains(a)) continue;
                    for (std::uint8_t b : kBits) {
                        if (st.contains(b) && compatible(a, atom.rel, b)) {
                            ax |= a;
                            at |= b;
                        }
                    }
                }
                const SignSet ay = atom.coeff.sign() > 0 ? SignSet(at) : SignSet(at).negated();
                const Provenance o =
                    merge(origins, merge(env.at(atom.lhs).origins, env.at(atom.rhs).origins));
                changed |= refine(atom.lhs, SignSet(ax), o);
                if (result.conflict) break;
                changed |= refine(atom.rhs, ay, o);
            }
            if (result.conflict) break;
        }
        if (result.conflict) break;
        for (const auto &def : defs) {
            const std::size_t n = def.factors.size();
            std::vector<SignSet> powered(n);
            Provenance all = merge(def.origins, env.at(def.name).origins);
            for (std::size_t i = 0; i < n; ++i) {
                powered[i] = env.sign(def.factors[i].first).power(def.factors[i].second);
                all = merge(all, env.at(def.factors[i].first).origins);
            }
            // prefix/suffix products to exclude one factor at a time
            std::vector<SignSet> prefix(n + 1, SignSet::pos());
            std::vector<SignSet> suffix(n + 1, SignSet::pos());
            for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i].times(powered[i]);
            for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1].times(powered[i]);
            changed |= refine(def.name, prefix[n], all);
            if (result.conflict) break;
            const SignSet target = env.sign(def.name);
            for (std::size_t i = 0; i < n && !result.conflict; ++i) {
                const SignSet others = prefix[i].times(suffix[i + 1]);
                const auto &[base, exponent] = def.factors[i];
                std::uint8_t allowed = 0;
                for (std::uint8_t a : kBits) {
                    if (!env.sign(base).contains(a)) continue;
                    if (!SignSet(a).power(exponent).times(others).meet(target).empty()) allowed |= a;
                }
                changed |= refine(base, SignSet(allowed), all);
            }
            if (result.conflict) break;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Multiplicative systems

namespace {

bool exact_root(const mpz_class &x, unsigned long n, mpz_class &root) {
    return mpz_root(root.get_mpz_t(), x.get_mpz_t(), n) != 0;
}

// Returns false when the atom is a true constant.
bool normalize(MultAtom &atom) {
    for (auto it = atom.monomial.begin(); it != atom.monomial.end();) {
        it = it->second == 0 ? atom.monomial.erase(it) : std::next(it);
    }
    if (atom.monomial.empty()) {
        if (holds(Rational(1), atom.rel, atom.bound)) return false;
        atom.rel = Rel::Lt;
        atom.bound = Rational(1);
        return true;
    }
    long g = 0;
    for (const auto &kv : atom.monomial) g = std::gcd(g, std::abs(kv.second));
    if (g > 1) {
        mpz_class num_root;
        mpz_class den_root;
        const auto ug = static_cast<unsigned long>(g);
        if (exact_root(atom.bound.numerator(), ug, num_root) &&
            exact_root(atom.bound.denominator(), ug, den_root)) {
            for (auto &kv : atom.monomial) kv.second /= g;
            atom.bound = Rational(mpq_class(num_root, den_root));
        }
    }
    if (atom.rel == Rel::Eq && atom.monomial.begin()->second < 0) {
        for (auto &kv : atom.monomial) kv.second = -kv.second;
        atom.bound = atom.bound.inverse();
    }
    return true;
}

MultAtom combine(const MultAtom &a, long ea, const MultAtom &b, long eb) {
    MultAtom out;
    out.monomial = a.monomial;
    for (auto &kv : out.monomial) kv.second *= ea;
    for (const auto &[v, e] : b.monomial) out.monomial[v] += e * eb;
    for (const auto &kv : out.monomial) {
        if (std::abs(kv.second) > kMaxExponent) {
            throw ResourceLimit("multiplicative elimination exceeded the exponent limit");
        }
    }
    out.bound = a.bound.pow(ea) * b.bound.pow(eb);
    if (a.rel == Rel::Eq && b.rel == Rel::Eq) out.rel = Rel::Eq;
    else if (a.rel == Rel::Lt || b.rel == Rel::Lt) out.rel = Rel::Lt;
    else out.rel = Rel::Le;
    out.origins = merge(a.origins, b.origins);
    return out;
}

long exponent_of(const MultAtom &a, Var v) {
    auto it = a.monomial.find(v);
    return it == a.monomial.end() ? 0 : it->second;
}

Var choose_variable(const MultSystem &sys, const std::vector<Var> &candidates) {
    std::optional<std::tuple<int, long, std::uint32_t>> best;
    Var pick = candidates.front();
    for (Var v : candidates) {
        long pos = 0;
        long neg = 0;
        bool eq = false;
        for (const auto &a : sys.atoms()) {
            const long e = exponent_of(a, v);
            if (e == 0) continue;
            if (a.rel == Rel::Eq) eq = true;
            else if (e > 0) ++pos;
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

MultSystem only_contradiction(const MultSystem &sys) {
    MultSystem out(sys.atom_cap());
    out.add(*sys.contradiction());
    return out;
}

}  // namespace

void MultSystem::add(MultAtom atom) {
    if (!normalize(atom)) return;
    Key key{atom.rel == Rel::Eq, {}};
    for (const auto &[v, e] : atom.monomial) key.second.emplace_back(v.id, e);
    if (key.second.empty()) {
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
            throw ResourceLimit("multiplicative system exceeded " + std::to_string(cap_) + " atoms");
        }
        return;
    }
    MultAtom &old = atoms_[it->second];
    if (atom.rel == Rel::Eq) {
        if (old.bound != atom.bound) {
            MultAtom bottom;
            bottom.origins = merge(old.origins, atom.origins);
            add(std::move(bottom));
        }
        return;
    }
    const bool stronger =
        atom.bound < old.bound || (atom.bound == old.bound && atom.rel == Rel::Lt && old.rel == Rel::Le);
    if (stronger) old = std::move(atom);
}

std::vector<Var> MultSystem::variables() const {
    std::vector<Var> out;
    for (const auto &a : atoms_) {
        for (const auto &kv : a.monomial) out.push_back(kv.first);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const MultAtom *MultSystem::contradiction() const {
    for (const auto &a : atoms_) {
        if (a.monomial.empty()) return &a;
    }
    return nullptr;
}

std::optional<MultAtom> to_mult_atom(const CommAtom &atom, const SignEnv &env, Provenance origins) {
    if (atom.lhs.is_one() || atom.coeff.is_zero()) return std::nullopt;
    const SignSet sx = env.sign(atom.lhs);
    if (!sx.is_strict()) return std::nullopt;
    const int s_x = sx == SignSet::pos() ? 1 : -1;
    int s_y = 1;
    origins = merge(origins, env.at(atom.lhs).origins);
    if (!atom.rhs.is_one()) {
        const SignSet sy = env.sign(atom.rhs);
        if (!sy.is_strict()) return std::nullopt;
        s_y = sy == SignSet::pos() ? 1 : -1;
        origins = merge(origins, env.at(atom.rhs).origins);
    }
    // s_x |x| rel c s_y |y|  <=>  |x| rel' (c s_x s_y) |y|
    const Rational k = atom.coeff * Rational(s_x * s_y);
    Rel rel = s_x < 0 ? flip(atom.rel) : atom.rel;
    if (k.sign() <= 0) return std::nullopt;
    MultAtom out;
    out.monomial[atom.lhs] = 1;
    if (!atom.rhs.is_one()) out.monomial[atom.rhs] = -1;
    out.bound = k;
    if (rel == Rel::Gt || rel == Rel::Ge) {
        for (auto &kv : out.monomial) kv.second = -kv.second;
        out.bound = k.inverse();
        rel = rel == Rel::Gt ? Rel::Lt : Rel::Le;
    }
    out.rel = rel;
    out.origins = std::move(origins);
    return out;
}

MultSystem to_positive_cone(const std::vector<MultDef> &defs, const std::vector<SourcedAtom> &comm,
                            const SignEnv &env) {
    MultSystem sys;
    for (const auto &def : defs) {
        if (!env.sign(def.name).is_strict()) continue;
        bool strict = true;
        Provenance origins = merge(def.origins, env.at(def.name).origins);
        for (const auto &[base, e] : def.factors) {
            strict = strict && env.sign(base).is_strict();
            origins = merge(origins, env.at(base).origins);
        }
        if (!strict) continue;
        MultAtom a;
        a.monomial[def.name] = 1;
        for (const auto &[base, e] : def.factors) a.monomial[base] -= e;
        a.rel = Rel::Eq;
        a.bound = Rational(1);
        a.origins = std::move(origins);
        sys.add(std::move(a));
    }
    for (const auto &[atom, origins] : comm) {
        if (auto m = to_mult_atom(atom, env, origins)) sys.add(std::move(*m));
    }
    return sys;
}

MultSystem mult_eliminate(const MultSystem &sys, Var x) {
    MultSystem out(sys.atom_cap());
    const MultAtom *pivot = nullptr;
    for (const auto &a : sys.atoms()) {
        if (a.rel != Rel::Eq || exponent_of(a, x) == 0) continue;
        if (pivot == nullptr || a.monomial.size() < pivot->monomial.size()) pivot = &a;
    }
    if (pivot != nullptr) {
        const long p = exponent_of(*pivot, x);
        for (const auto &a : sys.atoms()) {
            if (&a == pivot) continue;
            const long k = exponent_of(a, x);
            if (k == 0) {
                out.add(a);
                continue;
            }
            const long g = std::gcd(std::abs(k), std::abs(p));
            const long ea = std::abs(p) / g;
            const long eb = -(p > 0 ? 1 : -1) * k / g;
            MultAtom r = combine(a, ea, *pivot, eb);
            r.rel = a.rel;
            r.monomial.erase(x);
            out.add(std::move(r));
        }
        return out;
    }
    std::vector<const MultAtom *> upper;
    std::vector<const MultAtom *> lower;
    for (const auto &a : sys.atoms()) {
        const long e = exponent_of(a, x);
        if (e == 0) out.add(a);
        else if (e > 0) upper.push_back(&a);
        else lower.push_back(&a);
    }
    for (const MultAtom *a : upper) {
        const long p = exponent_of(*a, x);
        for (const MultAtom *b : lower) {
            const long q = exponent_of(*b, x);
            const long g = std::gcd(p, -q);
            MultAtom r = combine(*a, -q / g, *b, p / g);
            r.monomial.erase(x);
            out.add(std::move(r));
        }
    }
    return out;
}

MultSystem mult_project_onto(const MultSystem &sys, const std::vector<Var> &keep) {
    MultSystem current = sys;
    if (current.contradiction()) return only_contradiction(current);
    while (true) {
        std::vector<Var> candidates;
        for (Var v : current.variables()) {
            if (std::find(keep.begin(), keep.end(), v) == keep.end()) candidates.push_back(v);
        }
        if (candidates.empty()) break;
        current = mult_eliminate(current, choose_variable(current, candidates));
        if (current.contradiction()) return only_contradiction(current);
    }
    return current;
}

MultFeasibility check_mult_feasibility(const MultSystem &sys) {
    const MultSystem projected = mult_project_onto(sys, {});
    if (const MultAtom *bottom = projected.contradiction()) return {true, bottom->origins};
    return {};
}

// ---------------------------------------------------------------------------
// Roots

namespace {

// (p/q)^n compared with c, exactly.
int compare_power(const mpz_class &p, const mpz_class &q, unsigned long n, const Rational &c) {
    mpz_class pn;
    mpz_class qn;
    mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), n);
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), n);
    return cmp(mpq_class(pn * c.denominator()), mpq_class(qn * c.numerator()));
}

// Convergents of a/b with denominator at most `limit`.
std::vector<std::pair<mpz_class, mpz_class>> convergents(mpz_class a, mpz_class b, const mpz_class &limit) {
    std::vector<std::pair<mpz_class, mpz_class>> out;
    mpz_class h = 1;
    mpz_class h_prev = 0;
    mpz_class k = 0;
    mpz_class k_prev = 1;
    while (b != 0) {
        mpz_class t;
        mpz_fdiv_q(t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_class h_next = t * h + h_prev;
        mpz_class k_next = t * k + k_prev;
        if (k_next > limit) break;
        out.emplace_back(h_next, k_next);
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        mpz_class r = a - t * b;
        a = b;
        b = r;
    }
    return out;
}

}  // namespace

Rational rational_root_bound(const Rational &c, long n, RootDirection dir, long denom_bound) {
    if (c.sign() <= 0) throw std::invalid_argument("root bound needs a positive radicand");
    if (n <= 0) throw std::invalid_argument("root bound needs a positive index");
    if (denom_bound <= 0) throw std::invalid_argument("root bound needs a positive denominator bound");
    if (n == 1) return c;
    const auto un = static_cast<unsigned long>(n);
    mpz_class num_root;
    mpz_class den_root;
    if (exact_root(c.numerator(), un, num_root) && exact_root(c.denominator(), un, den_root)) {
        return Rational(mpq_class(num_root, den_root));
    }

    const mpz_class limit(denom_bound);
    // baseline: floor(D * r) / D and its successor
    mpz_class d_pow;
    mpz_pow_ui(d_pow.get_mpz_t(), limit.get_mpz_t(), un);
    mpz_class scaled = c.numerator() * d_pow / c.denominator();
    mpz_class base;
    mpz_root(base.get_mpz_t(), scaled.get_mpz_t(), un);
    std::vector<std::pair<mpz_class, mpz_class>> candidates{{base, limit}, {base + 1, limit}};

    // a fine dyadic bracket of the root, expanded into convergents
    const long bits = 2 * static_cast<long>(std::ceil(std::log2(static_cast<double>(denom_bound) + 1))) + 10;
    mpz_class two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    mpz_class two_kn;
    mpz_pow_ui(two_kn.get_mpz_t(), two_k.get_mpz_t(), un);
    mpz_class big = c.numerator() * two_kn / c.denominator();
    mpz_class r;
    mpz_root(r.get_mpz_t(), big.get_mpz_t(), un);
    for (const mpz_class &numer : {r, mpz_class(r + 1)}) {
        for (auto &cv : convergents(numer, two_k, limit)) candidates.push_back(std::move(cv));
    }

    std::optional<mpq_class> best;
    for (const auto &[p, q] : candidates) {
        if (p <= 0) continue;
        const int cmp_c = compare_power(p, q, un, c);
        const bool sound = dir == RootDirection::Lower ? cmp_c <= 0 : cmp_c >= 0;
        if (!sound) continue;
        mpq_class value(p, q);
        value.canonicalize();
        if (!best || (dir == RootDirection::Lower ? value > *best : value < *best)) best = value;
    }
    if (!best) {
        // only reachable for radicands below (1/D)^n when rounding down
        return dir == RootDirection::Lower ? Rational(0) : Rational(mpq_class(base + 1, limit));
    }
    return Rational(*best);
}

// ---------------------------------------------------------------------------
// Ratio projection

namespace {

struct Candidate {
    Rational value;
    Rel rel;  // Lt/Le for upper, Gt/Ge for lower
    Provenance origins;
    bool approximated = false;
};

bool better_upper(const Candidate &a, const std::optional<Candidate> &b) {
    if (!b) return true;
    return a.value < b->value || (a.value == b->value && a.rel == Rel::Lt && b->rel == Rel::Le);
}

bool better_lower(const Candidate &a, const std::optional<Candidate> &b) {
    if (!b) return true;
    return a.value > b->value || (a.value == b->value && a.rel == Rel::Gt && b->rel == Rel::Ge);
}

}  // namespace

RatioProjection project_to_ratio(const MultSystem &sys, Var u, Var v, long denom_bound) {
    if (u == v) throw std::invalid_argument("project_to_ratio needs two distinct variables");
    if (u.is_one()) std::swap(u, v);
    MultSystem work = sys;
    Var target = u;
    if (!v.is_one()) {
        target = Var{std::numeric_limits<std::uint32_t>::max() - 1};
        MultAtom ratio;
        ratio.monomial = {{target, 1}, {u, -1}, {v, 1}};
        ratio.rel = Rel::Eq;
        ratio.bound = Rational(1);
        work.add(std::move(ratio));
    }
    const MultSystem projected = mult_project_onto(work, {target});
    RatioProjection out;
    if (const MultAtom *bottom = projected.contradiction()) {
        out.infeasible = true;
        out.infeasible_origins = bottom->origins;
        return out;
    }

    std::optional<Candidate> upper;
    std::optional<Candidate> lower;
    auto offer_upper = [&](const Rational &c, long n, Rel rel, const Provenance &o) {
        const Rational q = rational_root_bound(c, n, RootDirection::Upper, denom_bound);
        const bool exact = q.pow(n) == c;
        Candidate cand{q, exact ? rel : Rel::Lt, o, !exact};
        if (better_upper(cand, upper)) upper = std::move(cand);
    };
    auto offer_lower = [&](const Rational &c, long n, Rel rel, const Provenance &o) {
        const Rational q = rational_root_bound(c, n, RootDirection::Lower, denom_bound);
        if (q.sign() <= 0) return;
        const bool exact = q.pow(n) == c;
        Candidate cand{q, exact ? rel : Rel::Gt, o, !exact};
        if (better_lower(cand, lower)) lower = std::move(cand);
    };
    for (const auto &row : projected.atoms()) {
        const long k = exponent_of(row, target);
        if (k == 0) continue;
        // target^k rel bound
        if (k > 0) {
            if (row.rel != Rel::Eq) {
                offer_upper(row.bound, k, row.rel, row.origins);
            } else {
                offer_upper(row.bound, k, Rel::Le, row.origins);
                offer_lower(row.bound, k, Rel::Ge, row.origins);
            }
        } else {
            const Rational inv = row.bound.inverse();
            if (row.rel != Rel::Eq) {
                offer_lower(inv, -k, flip(row.rel), row.origins);
            } else {
                offer_upper(inv, -k, Rel::Le, row.origins);
                offer_lower(inv, -k, Rel::Ge, row.origins);
            }
        }
    }
    const Var rhs = v.is_one() ? kOne : v;
    if (upper && lower && upper->rel == Rel::Le && lower->rel == Rel::Ge && upper->value == lower->value) {
        out.bounds.push_back({canonical({u, Rel::Eq, upper->value, rhs}),
                              merge(upper->origins, lower->origins), false});
        return out;
    }
    if (lower) {
        out.bounds.push_back({canonical({u, lower->rel, lower->value, rhs}), lower->origins, lower->approximated});
    }
    if (upper) {
        out.bounds.push_back({canonical({u, upper->rel, upper->value, rhs}), upper->origins, upper->approximated});
    }
    return out;
}

CommAtom from_positive_cone(const CommAtom &abs_atom, const SignEnv &env) {
    auto sign_of = [&](Var x) {
        if (x.is_one()) return 1;
        const SignSet s = env.sign(x);
        if (!s.is_strict()) throw std::logic_error("variable without a strict sign");
        return s == SignSet::pos() ? 1 : -1;
    };
    const int su = sign_of(abs_atom.lhs);
    const int sv = sign_of(abs_atom.rhs);
    const Rel rel = su < 0 ? flip(abs_atom.rel) : abs_atom.rel;
    return canonical({abs_atom.lhs, rel, abs_atom.coeff * Rational(su * sv), abs_atom.rhs});
}

bool mult_entails(const MultSystem &sys, const CommAtom &atom, const SignEnv &env) {
    auto refutes = [&](Rel negated) {
        const CommAtom neg{atom.lhs, negated, atom.coeff, atom.rhs};
        if (auto m = to_mult_atom(neg, env)) {
            MultSystem trial = sys;
            trial.add(std::move(*m));
            return check_mult_feasibility(trial).infeasible;
        }
        // not representable: decide from the signs alone
        auto s = [&](Var x) { return x.is_one() ? 1 : (env.sign(x) == SignSet::pos() ? 1 : -1); };
        if (neg.lhs.is_one() || neg.coeff.is_zero() || !env.sign(neg.lhs).is_strict() ||
            (!neg.rhs.is_one() && !env.sign(neg.rhs).is_strict())) {
            return false;
        }
        const Rel rel = s(neg.lhs) < 0 ? flip(neg.rel) : neg.rel;
        // |x| rel k|y| with k <= 0 holds iff rel is > or >=
        return rel != Rel::Gt && rel != Rel::Ge;
    };
    if (atom.rel == Rel::Eq) return refutes(Rel::Lt) && refutes(Rel::Gt);
    return refutes(negate(atom.rel));
}

}  // namespace ineq::mularith
