#pragma once

#include "ineq/atoms.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ineq::monofun {

enum class Direction { Increasing, Decreasing };
enum class RangeSign { None, Positive, Nonnegative };

struct MonoDecl {
    std::string symbol;
    Direction direction = Direction::Increasing;
    RangeSign range = RangeSign::None;
};

/// name = symbol(coeff * argument); argument is 1 for constant arguments.
struct Application {
    Var name;
    std::string symbol;
    Rational coeff;
    Var argument;
    Provenance origins;
};

/// What the comparison table knows about lhs versus coeff*rhs: the
/// strongest entailed relation and its supporting facts.
struct Known {
    Rel rel;
    Provenance origins;
};
using RelationQuery = std::function<std::optional<Known>(Var lhs, const Rational &coeff, Var rhs)>;

/// Monotone transfer between pairs of applications of the same symbol, in
/// both directions, plus range-sign atoms.
std::vector<SourcedAtom> derive_mono_facts(const std::vector<MonoDecl> &decls,
                                           const std::vector<Application> &apps,
                                           const RelationQuery &query);

}  // namespace ineq::monofun
