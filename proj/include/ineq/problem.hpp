#pragma once

#include "ineq/blackboard.hpp"
#include "ineq/monofun.hpp"
#include "ineq/raw_term.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ineq {

/// Input error with a 1-based source position (0 when not applicable).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &message, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

struct ProblemFile {
    std::vector<monofun::MonoDecl> decls;
    std::vector<Comparison> hypotheses;
    std::optional<Comparison> goal;
    /// Set when the file contains `refute:` sections.
    bool refutation = false;
    std::optional<int> max_rounds;
    std::optional<long> root_denom_bound;
};

/// Parses the problem-file format: `declare:`, `assume:`, `prove:`,
/// `refute:` and `options:` lines, with `#` comments.
ProblemFile parse_problem(std::string_view text);

/// Parses a single expression. With `known_functions` set, applications of
/// other symbols are rejected.
RawTerm parse_expression(std::string_view text, const std::vector<std::string> *known_functions = nullptr);

Comparison parse_comparison(std::string_view text, const std::vector<std::string> *known_functions = nullptr);

}  // namespace ineq
