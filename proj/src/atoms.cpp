#include "ineq/atoms.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace ineq {

Rel flip(Rel r) {
    switch (r) {
    case Rel::Lt: return Rel::Gt;
    case Rel::Le: return Rel::Ge;
    case Rel::Eq: return Rel::Eq;
    case Rel::Ge: return Rel::Le;
    case Rel::Gt: return Rel::Lt;
    }
    return r;
}

Rel negate(Rel r) {
    switch (r) {
    case Rel::Lt: return Rel::Ge;
    case Rel::Le: return Rel::Gt;
    case Rel::Ge: return Rel::Lt;
    case Rel::Gt: return Rel::Le;
    case Rel::Eq: break;
    }
    throw std::logic_error("negation of an equality is a disjunction");
}

bool is_strict(Rel r) {
    return r == Rel::Lt || r == Rel::Gt;
}

const char *symbol(Rel r) {
    switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    }
    return "?";
}

bool holds(const Rational &a, Rel r, const Rational &b) {
    switch (r) {
    case Rel::Lt: return a < b;
    case Rel::Le: return a <= b;
    case Rel::Eq: return a == b;
    case Rel::Ge: return a >= b;
    case Rel::Gt: return a > b;
    }
    return false;
}

Provenance merge(const Provenance &a, const Provenance &b) {
    Provenance out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

CommAtom canonical(const CommAtom &atom) {
    CommAtom a = atom;
    if (a.coeff.is_zero()) {
        a.rhs = kOne;
        return a;
    }
    if (a.lhs.is_one() && !a.rhs.is_one()) {
        // c0 = 1 rel coeff * y  <=>  y rel' (1/coeff)
        const Rel r = a.coeff.sign() > 0 ? flip(a.rel) : a.rel;
        return {a.rhs, r, a.coeff.inverse(), kOne};
    }
    if (!a.rhs.is_one() && a.rhs.id < a.lhs.id) {
        const Rel r = a.coeff.sign() > 0 ? flip(a.rel) : a.rel;
        return {a.rhs, r, a.coeff.inverse(), a.lhs};
    }
    return a;
}

std::string render(const CommAtom &atom, const std::function<std::string(Var)> &name) {
    std::string out = name(atom.lhs) + " " + symbol(atom.rel) + " ";
    if (atom.rhs.is_one() || atom.coeff.is_zero()) {
        return out + atom.coeff.to_string();
    }
    if (atom.coeff == Rational(1)) return out + name(atom.rhs);
    return out + atom.coeff.to_string() + " * " + name(atom.rhs);
}

ScaledComparison compare_scaled(const Rational &a, Var p, Rel rel, const Rational &b, Var q) {
    auto constant = [](const Rational &lhs, Rel r, const Rational &rhs) {
        ScaledComparison out;
        out.kind = holds(lhs, r, rhs) ? ScaledComparison::Kind::True : ScaledComparison::Kind::False;
        return out;
    };
    auto sign_atom = [](const Rational &c, Var x, Rel r) {
        // c*x r 0 with c != 0
        ScaledComparison out;
        out.kind = ScaledComparison::Kind::Atom;
        out.atom = {x, c.sign() > 0 ? r : flip(r), Rational(0), kOne};
        return out;
    };
    if (p == q) {
        const Rational d = a - b;
        if (d.is_zero()) return constant(Rational(0), rel, Rational(0));
        if (p.is_one()) return constant(d, rel, Rational(0));
        return sign_atom(d, p, rel);
    }
    if (a.is_zero() && b.is_zero()) return constant(Rational(0), rel, Rational(0));
    if (a.is_zero()) {
        if (q.is_one()) return constant(Rational(0), rel, b);
        return sign_atom(b, q, flip(rel));
    }
    if (b.is_zero()) {
        if (p.is_one()) return constant(a, rel, Rational(0));
        return sign_atom(a, p, rel);
    }
    ScaledComparison out;
    out.kind = ScaledComparison::Kind::Atom;
    out.atom = canonical({p, a.sign() > 0 ? rel : flip(rel), b / a, q});
    return out;
}

}  // namespace ineq
