#include "ineq/raw_term.hpp"

#include <algorithm>
#include <sstream>

namespace ineq {

RawTerm RawTerm::one() {
    return RawTerm(std::make_shared<const Node>(Node{Kind::One, {}, {}, 0, {}}));
}

RawTerm RawTerm::var(std::string name) {
    return RawTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, 0, {}}));
}

RawTerm RawTerm::constant(const Rational &value) {
    return scale(value, one());
}

RawTerm RawTerm::sum(std::vector<RawTerm> terms) {
    return RawTerm(std::make_shared<const Node>(Node{Kind::Sum, {}, std::move(terms), 0, {}}));
}

RawTerm RawTerm::neg(RawTerm term) {
    return RawTerm(std::make_shared<const Node>(Node{Kind::Neg, {}, {std::move(term)}, 0, {}}));
}

RawTerm RawTerm::prod(std::vector<RawTerm> terms) {
    return RawTerm(std::make_shared<const Node>(Node{Kind::Prod, {}, std::move(terms), 0, {}}));
}

RawTerm RawTerm::div(RawTerm numerator, RawTerm denominator) {
    return RawTerm(std::make_shared<const Node>(
        Node{Kind::Div, {}, {std::move(numerator), std::move(denominator)}, 0, {}}));
}

RawTerm RawTerm::pow(RawTerm base, long exponent) {
    if (exponent == 0) {
        throw TermError("exponent 0 is not allowed; simplify the term first");
    }
    return RawTerm(
        std::make_shared<const Node>(Node{Kind::Pow, {}, {std::move(base)}, exponent, {}}));
}

RawTerm RawTerm::scale(const Rational &factor, RawTerm term) {
    return RawTerm(
        std::make_shared<const Node>(Node{Kind::Scale, {}, {std::move(term)}, 0, factor}));
}

RawTerm RawTerm::app(std::string symbol, RawTerm argument) {
    return RawTerm(std::make_shared<const Node>(
        Node{Kind::App, std::move(symbol), {std::move(argument)}, 0, {}}));
}

void RawTerm::collect_variables(std::vector<std::string> &out) const {
    if (kind() == Kind::Var) {
        if (std::find(out.begin(), out.end(), name()) == out.end()) {
            out.push_back(name());
        }
        return;
    }
    for (const auto &child : children()) {
        child.collect_variables(out);
    }
}

Rational RawTerm::evaluate(const Assignment &env, const FunctionTable *functions) const {
    switch (kind()) {
    case Kind::One:
        return Rational(1);
    case Kind::Var: {
        auto it = env.find(name());
        if (it == env.end()) {
            throw TermError("unbound variable '" + name() + "'");
        }
        return it->second;
    }
    case Kind::Sum: {
        Rational total;
        for (const auto &child : children()) total += child.evaluate(env, functions);
        return total;
    }
    case Kind::Neg:
        return -children()[0].evaluate(env, functions);
    case Kind::Prod: {
        Rational total(1);
        for (const auto &child : children()) total *= child.evaluate(env, functions);
        return total;
    }
    case Kind::Div: {
        const Rational den = children()[1].evaluate(env, functions);
        if (den.is_zero()) return Rational(0);
        return children()[0].evaluate(env, functions) / den;
    }
    case Kind::Pow: {
        const Rational base = children()[0].evaluate(env, functions);
        if (base.is_zero()) return Rational(0);
        return base.pow(exponent());
    }
    case Kind::Scale:
        return factor() * children()[0].evaluate(env, functions);
    case Kind::App: {
        if (functions == nullptr) {
            throw TermError("no interpretation for function '" + name() + "'");
        }
        auto it = functions->find(name());
        if (it == functions->end()) {
            throw TermError("no interpretation for function '" + name() + "'");
        }
        return it->second(children()[0].evaluate(env, functions));
    }
    }
    throw TermError("corrupt term");
}

std::string RawTerm::to_string() const {
    std::ostringstream os;
    auto join = [&](const char *sep) {
        os << '(';
        for (std::size_t i = 0; i < children().size(); ++i) {
            if (i) os << sep;
            os << children()[i].to_string();
        }
        os << ')';
    };
    switch (kind()) {
    case Kind::One: os << "1"; break;
    case Kind::Var: os << name(); break;
    case Kind::Sum: join(" + "); break;
    case Kind::Neg: os << "-(" << children()[0].to_string() << ')'; break;
    case Kind::Prod: join(" * "); break;
    case Kind::Div:
        os << '(' << children()[0].to_string() << " / " << children()[1].to_string() << ')';
        break;
    case Kind::Pow: os << '(' << children()[0].to_string() << ")^" << exponent(); break;
    case Kind::Scale: os << '(' << factor() << " * " << children()[0].to_string() << ')'; break;
    case Kind::App: os << name() << '(' << children()[0].to_string() << ')'; break;
    }
    return os.str();
}

}  // namespace ineq
