#pragma once

#include "ineq/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ineq {

/// Raised for malformed or unevaluable terms.
class TermError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Assignment = std::map<std::string, Rational, std::less<>>;
using FunctionTable = std::map<std::string, std::function<Rational(const Rational &)>, std::less<>>;

/// Unnormalized term tree as produced by the parser.
class RawTerm {
public:
    enum class Kind { One, Var, Sum, Neg, Prod, Div, Pow, Scale, App };

    static RawTerm one();
    static RawTerm var(std::string name);
    static RawTerm constant(const Rational &value);
    static RawTerm sum(std::vector<RawTerm> terms);
    static RawTerm neg(RawTerm term);
    static RawTerm prod(std::vector<RawTerm> terms);
    static RawTerm div(RawTerm numerator, RawTerm denominator);
    /// Throws TermError when `exponent` is zero.
    static RawTerm pow(RawTerm base, long exponent);
    static RawTerm scale(const Rational &factor, RawTerm term);
    static RawTerm app(std::string symbol, RawTerm argument);

    Kind kind() const { return node_->kind; }
    const std::string &name() const { return node_->name; }
    const std::vector<RawTerm> &children() const { return node_->children; }
    long exponent() const { return node_->exponent; }
    const Rational &factor() const { return node_->factor; }

    /// Variable names in order of first appearance (left to right).
    void collect_variables(std::vector<std::string> &out) const;

    /// Exact value under `env`; division by zero yields zero.
    Rational evaluate(const Assignment &env, const FunctionTable *functions = nullptr) const;

    /// Fully parenthesized rendering, for diagnostics.
    std::string to_string() const;

    friend RawTerm operator+(RawTerm a, RawTerm b) { return sum({std::move(a), std::move(b)}); }
    friend RawTerm operator-(RawTerm a, RawTerm b) { return sum({std::move(a), neg(std::move(b))}); }
    friend RawTerm operator*(RawTerm a, RawTerm b) { return prod({std::move(a), std::move(b)}); }
    friend RawTerm operator/(RawTerm a, RawTerm b) { return div(std::move(a), std::move(b)); }

private:
    struct Node {
        Kind kind = Kind::One;
        std::string name;
        std::vector<RawTerm> children;
        long exponent = 0;
        Rational factor;
    };

    explicit RawTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

}  // namespace ineq
