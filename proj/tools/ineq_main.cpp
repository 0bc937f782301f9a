// Command-line driver: prove / refute problem files, normalize and compare terms.
#include "ineq/blackboard.hpp"
#include "ineq/normal_form.hpp"
#include "ineq/problem.hpp"
#include "ineq/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitDone = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitInput = 2;

struct Settings {
    int max_rounds = 30;
    long root_denom_bound = ineq::mularith::kDefaultRootDenominator;
    bool trace = false;
    bool json = false;
};

bool env_flag(const char *name) {
    const char *v = std::getenv(name);
    if (v == nullptr) return false;
    const std::string s(v);
    return !(s.empty() || s == "0" || s == "false" || s == "no");
}

template <typename T>
void env_number(const char *name, T &out) {
    const char *v = std::getenv(name);
    if (v == nullptr) return;
    std::istringstream is(v);
    T value{};
    if (!(is >> value) || value <= 0) throw std::invalid_argument(std::string(name) + " must be a positive integer");
    out = value;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_problem(const std::string &path, ineq::TaskKind kind, Settings settings, const CLI::Option *rounds_flag,
                const CLI::Option *bound_flag, int cli_rounds, long cli_bound) {
    const ineq::ProblemFile problem = ineq::parse_problem(read_file(path));
    if (problem.max_rounds && rounds_flag->count() == 0) settings.max_rounds = *problem.max_rounds;
    if (problem.root_denom_bound && bound_flag->count() == 0) settings.root_denom_bound = *problem.root_denom_bound;
    if (rounds_flag->count() > 0) settings.max_rounds = cli_rounds;
    if (bound_flag->count() > 0) settings.root_denom_bound = cli_bound;

    ineq::EngineOptions options;
    options.max_rounds = settings.max_rounds;
    options.root_denom_bound = settings.root_denom_bound;

    ineq::ProofResult result;
    if (kind == ineq::TaskKind::Prove) {
        if (!problem.goal) throw std::invalid_argument(path + ": no 'prove:' goal");
        result = ineq::prove_sequent(problem.hypotheses, *problem.goal, problem.decls, options);
    } else {
        if (problem.goal) throw std::invalid_argument(path + ": has a 'prove:' goal; use the prove command");
        result = ineq::refute_hypotheses(problem.hypotheses, problem.decls, options);
    }

    if (settings.json) {
        std::cout << ineq::report_json(result).dump(2) << '\n';
    } else {
        std::cout << ineq::verdict_line(result, kind) << '\n';
        if (settings.trace) {
            for (const auto &s : result.subtasks) {
                if (result.subtasks.size() > 1) std::cout << "-- " << s.goal << ": " << verdict_name(s.verdict.kind) << '\n';
                std::cout << ineq::human_trace(s.state);
                const auto names = s.state.name_table();
                for (const auto &[name, term] : names) std::cout << "  " << name << " := " << term << '\n';
            }
        }
    }
    return result.verdict.kind == ineq::VerdictKind::Refuted ? kExitDone : kExitUnknown;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Refutation engine for real inequalities without case splits"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings settings;
    int cli_rounds = 0;
    long cli_bound = 0;
    auto *rounds_flag = app.add_option("--max-rounds", cli_rounds, "Round cap (default 30)")->check(CLI::PositiveNumber);
    auto *bound_flag = app.add_option("--root-denom-bound", cli_bound,
                                      "Denominator bound for root approximations (default 1000000)")
                           ->check(CLI::PositiveNumber);
    bool trace_flag = false;
    bool json_flag = false;
    app.add_flag("--trace", trace_flag, "Print the derivation");
    app.add_flag("--json", json_flag, "Print a JSON report");

    std::string file;
    auto *prove = app.add_subcommand("prove", "Prove the goal of a problem file");
    prove->add_option("FILE", file)->required();
    auto *refute = app.add_subcommand("refute", "Refute the hypotheses of a problem file");
    refute->add_option("FILE", file)->required();
    std::string expr;
    auto *normalize = app.add_subcommand("normalize", "Print the normal form of a term");
    normalize->add_option("EXPR", expr)->required();
    std::vector<std::string> pair;
    auto *equal = app.add_subcommand("equal", "Decide whether two terms have the same normal form");
    equal->add_option("EXPR", pair)->required()->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        env_number("INEQ_MAX_ROUNDS", settings.max_rounds);
        env_number("INEQ_ROOT_DENOM_BOUND", settings.root_denom_bound);
        settings.trace = env_flag("INEQ_TRACE") || trace_flag;
        settings.json = env_flag("INEQ_JSON") || json_flag;

        if (*prove) return run_problem(file, ineq::TaskKind::Prove, settings, rounds_flag, bound_flag, cli_rounds, cli_bound);
        if (*refute) return run_problem(file, ineq::TaskKind::Refute, settings, rounds_flag, bound_flag, cli_rounds, cli_bound);
        if (*normalize) {
            ineq::TermStore store;
            std::cout << store.render(store.normalize(ineq::parse_expression(expr))) << '\n';
            return kExitDone;
        }
        if (*equal) {
            const bool same = ineq::equal_terms(ineq::parse_expression(pair[0]), ineq::parse_expression(pair[1]));
            std::cout << (same ? "equal" : "not equal") << '\n';
            return same ? kExitDone : kExitUnknown;
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
