#include "doctest.h"

#include "ineq/normal_form.hpp"
#include "ineq/problem.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using namespace ineq;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string &args, const std::string &env = {}) {
    const std::string cmd = (env.empty() ? "" : "env " + env + " ") + INEQ_BINARY + " " + args + " 2>&1";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string corpus(const std::string &name) {
    return std::string(INEQ_CORPUS) + "/" + name + ".prob";
}

std::string temp_problem(const std::string &name, const std::string &text) {
    const std::string path = std::string(INEQ_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

void check_error(std::string_view text, int line, int column, const std::string &fragment) {
    try {
        parse_problem(text);
        FAIL("accepted: " << text);
    } catch (const ParseError &e) {
        CHECK_MESSAGE(e.line() == line, e.what());
        CHECK_MESSAGE(e.column() == column, e.what());
        CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
    }
}

}  // namespace

TEST_CASE("problem files") {
    const auto p = parse_problem(
        "# comment\n"
        "declare: exp increasing positive\n"
        "assume: 0 < x\n"
        "assume: x < y   # trailing\n"
        "prove: (1 + x^2) / (2 + exp(y)) < (2 + y^2) / (1 + exp(x))\n"
        "options: max-rounds=7 root-denom-bound=1000\n");
    REQUIRE(p.decls.size() == 1);
    CHECK(p.decls[0].symbol == "exp");
    CHECK(p.decls[0].direction == monofun::Direction::Increasing);
    CHECK(p.decls[0].range == monofun::RangeSign::Positive);
    CHECK(p.hypotheses.size() == 2);
    CHECK(p.hypotheses[1].text == "x < y");
    REQUIRE(p.goal);
    CHECK(p.goal->rel == Rel::Lt);
    CHECK_FALSE(p.refutation);
    CHECK(p.max_rounds == 7);
    CHECK(p.root_denom_bound == 1000);
}

TEST_CASE("sections may continue on following lines") {
    const auto p = parse_problem("assume:\n  0 <= x\n  x <= 1\nrefute:\n  x > 2\n");
    CHECK(p.hypotheses.size() == 3);
    CHECK(p.refutation);
    CHECK_FALSE(p.goal);
}

TEST_CASE("expressions") {
    CHECK(equal_terms(parse_expression("x^-2"), parse_expression("1 / (x * x)")));
    CHECK(equal_terms(parse_expression("x^(-2)"), parse_expression("x^-2")));
    CHECK(equal_terms(parse_expression("-x + 3/4"), parse_expression("3/4 - x")));
    CHECK_THROWS_AS(parse_expression("2 x"), ParseError);
}

TEST_CASE("errors carry positions") {
    check_error("assume: x > 1.5\n", 1, 13, "decimal");
    check_error("assume: 0 < x\nprove: x / 0 > 0\n", 2, 12, "zero-denominator literal");
    check_error("prove: exp(x) > 0\n", 1, 8, "undeclared function");
    check_error("assume: x != 1\n", 1, 11, "disequalities");
    check_error("assume: _t1 > 0\n", 1, 9, "'_'");
    check_error("assume: x^0 > 0\n", 1, 11, "exponent 0");
    check_error("suppose: x > 0\n", 1, 1, "unknown section");
    check_error("prove: x > 0\nprove: y > 0\n", 2, 1, "one goal");
    check_error("assume: x >\n", 1, 12, "");
}

TEST_CASE("rendered normal forms parse back to themselves") {
    const char *terms[] = {"(1 + x^2) / (2 + y)^17", "(1 + eps / (3 * (C + 3))) * n", "x^2 - 2*x + 1",
                           "2/3 * x * y + 1",         "(x + y)^2 * y^-1 * f(x / 2)",  "1/(x*y^2) - 3*z"};
    TermStore store;
    for (const char *t : terms) {
        const NormalTerm n = store.normalize(parse_expression(t));
        CHECK_MESSAGE(store.normalize(parse_expression(store.render(n))) == n, t);
    }
}

TEST_CASE("command line") {
    SUBCASE("normalize") {
        const Run r = run_cli("normalize 'x + x'");
        CHECK(r.status == 0);
        CHECK(r.out == "2 * x\n");
    }
    SUBCASE("equal") {
        CHECK(run_cli("equal 'x + y' 'y + x'").out == "equal\n");
        const Run r = run_cli("equal 'x * (1 + y)' 'x + x*y'");
        CHECK(r.status == 1);
        CHECK(r.out == "not equal\n");
    }
    SUBCASE("proved") {
        const Run r = run_cli("prove " + corpus("motivating_powers"));
        CHECK(r.status == 0);
        CHECK(r.out.rfind("PROVED (rounds: ", 0) == 0);
    }
    SUBCASE("not proved") {
        const Run r = run_cli("prove " + corpus("square") + " --max-rounds 4");
        CHECK(r.status == 1);
        CHECK(r.out == "UNKNOWN: round cap reached (rounds: 4)\n");
    }
    SUBCASE("refuted") {
        const Run r = run_cli("refute " + corpus("family_3_4"));
        CHECK(r.status == 0);
        CHECK(r.out.rfind("REFUTED", 0) == 0);
    }
    SUBCASE("saturated") {
        const Run r = run_cli("refute " + corpus("sums_at_least_two"));
        CHECK(r.status == 1);
        CHECK(r.out.rfind("UNKNOWN: saturated", 0) == 0);
    }
    SUBCASE("input errors") {
        CHECK(run_cli("prove /nonexistent/file.prob").status == 2);
        CHECK(run_cli("refute " + corpus("square")).status == 2);
        const Run r = run_cli("prove " + temp_problem("decimal.prob", "assume: x > 1.5\nprove: x > 0\n"));
        CHECK(r.status == 2);
        CHECK(r.out.find("line 1, column 13") != std::string::npos);
        CHECK(run_cli("frobnicate").status == 2);
    }
    SUBCASE("json") {
        const Run r = run_cli("prove " + corpus("scaled_bound") + " --json");
        CHECK(r.status == 0);
        CHECK(r.out.rfind("{\n  \"verdict\": \"refuted\",\n  \"rounds\": ", 0) == 0);
        CHECK(r.out.find("\"name_table\"") != std::string::npos);
        CHECK(r.out.find("\"subtasks\"") != std::string::npos);
    }
    SUBCASE("defaults < environment < file options < flags") {
        const std::string square = corpus("square");
        CHECK(run_cli("prove " + square).out == "UNKNOWN: round cap reached (rounds: 30)\n");
        CHECK(run_cli("prove " + square, "INEQ_MAX_ROUNDS=5").out == "UNKNOWN: round cap reached (rounds: 5)\n");
        const std::string with_options =
            temp_problem("options.prob", "prove: x^2 - 2*x + 1 >= 0\noptions: max-rounds=4\n");
        CHECK(run_cli("prove " + with_options, "INEQ_MAX_ROUNDS=6").out ==
              "UNKNOWN: round cap reached (rounds: 4)\n");
        CHECK(run_cli("prove " + with_options + " --max-rounds 2", "INEQ_MAX_ROUNDS=6").out ==
              "UNKNOWN: round cap reached (rounds: 2)\n");
        CHECK(run_cli("prove " + corpus("scaled_bound"), "INEQ_JSON=1").out.rfind("{", 0) == 0);
    }
}
