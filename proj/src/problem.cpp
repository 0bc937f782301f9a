#include "ineq/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace ineq {

ParseError::ParseError(const std::string &message, int line, int column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                        ": " + message
                                  : message),
      line_(line),
      column_(column) {}

namespace {

class ExprParser {
public:
    ExprParser(std::string_view text, int line, int column_offset, const std::vector<std::string> *functions)
        : text_(text), line_(line), offset_(column_offset), functions_(functions) {}

    RawTerm expression() {
        RawTerm t = term();
        while (true) {
            skip();
            if (eat('+')) t = t + term();
            else if (peek() == '-') {
                ++pos_;
                t = t - term();
            } else {
                return t;
            }
        }
    }

    Comparison comparison() {
        const std::size_t start = pos_;
        RawTerm lhs = expression();
        skip();
        const std::size_t rel_pos = pos_;
        Rel rel;
        if (eat_str("<=")) rel = Rel::Le;
        else if (eat_str(">=")) rel = Rel::Ge;
        else if (eat_str("!=")) fail("disequalities are not supported; split them by hand", rel_pos);
        else if (eat('<')) rel = Rel::Lt;
        else if (eat('>')) rel = Rel::Gt;
        else if (eat('=')) rel = Rel::Eq;
        else fail("expected a comparison operator", rel_pos);
        RawTerm rhs = expression();
        finish();
        std::string text(trim(text_.substr(start)));
        return {std::move(lhs), rel, std::move(rhs), std::move(text)};
    }

    void finish() {
        skip();
        if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }

private:
    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    [[noreturn]] void fail(const std::string &msg, std::size_t at) const {
        throw ParseError(msg, line_, offset_ + static_cast<int>(at) + 1);
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool eat_str(std::string_view s) {
        skip();
        if (text_.substr(pos_, s.size()) != s) return false;
        pos_ += s.size();
        return true;
    }

    RawTerm term() {
        RawTerm t = unary();
        while (true) {
            if (eat('*')) {
                t = t * unary();
            } else if (peek() == '/') {
                ++pos_;
                skip();
                const std::size_t at = pos_;
                RawTerm d = unary();
                if (d.kind() == RawTerm::Kind::Scale && d.factor().is_zero()) fail("zero-denominator literal", at);
                t = t / d;
            } else {
                return t;
            }
        }
    }

    RawTerm unary() {
        if (eat('-')) return RawTerm::neg(unary());
        if (eat('+')) return unary();
        return power();
    }

    RawTerm power() {
        RawTerm base = primary();
        if (!eat('^')) return base;
        skip();
        const std::size_t at = pos_;
        const bool paren = eat('(');
        bool negative = false;
        if (eat('-')) negative = true;
        else eat('+');
        skip();
        const std::size_t digits_at = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits_at == pos_) fail("expected an integer exponent", at);
        if (pos_ < text_.size() && text_[pos_] == '.') fail("exponents must be integers", at);
        long e = 0;
        const auto digits = text_.substr(digits_at, pos_ - digits_at);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), e);
        if (ec != std::errc()) fail("exponent out of range", at);
        if (paren && !eat(')')) fail("expected ')'", pos_);
        if (e == 0) fail("exponent 0 is not allowed", at);
        return RawTerm::pow(std::move(base), negative ? -e : e);
    }

    RawTerm primary() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RawTerm t = expression();
            if (!eat(')')) fail("expected ')'", pos_);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '.') fail("decimal literals are not supported; write p/q", start);
            return RawTerm::constant(Rational::parse(text_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (name.front() == '_') fail("identifiers may not start with '_'", start);
            if (peek() == '(') {
                if (functions_ != nullptr &&
                    std::find(functions_->begin(), functions_->end(), name) == functions_->end()) {
                    fail("undeclared function '" + name + "'", start);
                }
                ++pos_;
                RawTerm arg = expression();
                if (!eat(')')) fail("expected ')'", pos_);
                return RawTerm::app(std::move(name), std::move(arg));
            }
            return RawTerm::var(std::move(name));
        }
        fail(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int offset_;
    const std::vector<std::string> *functions_;
};

std::vector<std::string_view> split_words(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

template <typename T>
T parse_number(std::string_view s, int line, int column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value <= 0) {
        throw ParseError("expected a positive integer, got '" + std::string(s) + "'", line, column);
    }
    return value;
}

}  // namespace

RawTerm parse_expression(std::string_view text, const std::vector<std::string> *known_functions) {
    ExprParser p(text, 0, 0, known_functions);
    RawTerm t = p.expression();
    p.finish();
    return t;
}

Comparison parse_comparison(std::string_view text, const std::vector<std::string> *known_functions) {
    ExprParser p(text, 0, 0, known_functions);
    return p.comparison();
}

ProblemFile parse_problem(std::string_view text) {
    ProblemFile out;
    std::vector<std::string> functions;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t body_at = 0;
        const auto colon = line.find(':');
        if (colon != std::string_view::npos) {
            std::string head;
            for (char c : line.substr(0, colon)) {
                if (!std::isspace(static_cast<unsigned char>(c))) head += static_cast<char>(std::tolower(c));
            }
            if (head == "declare" || head == "assume" || head == "prove" || head == "refute" || head == "options") {
                section = head;
                body_at = colon + 1;
            } else if (!head.empty() && std::all_of(head.begin(), head.end(), [](char c) { return std::isalpha(c); })) {
                throw ParseError("unknown section '" + head + "'", line_no, 1);
            }
        }
        const std::string_view body = line.substr(body_at);
        if (split_words(body).empty()) continue;
        const int column = static_cast<int>(body_at);
        if (section.empty()) throw ParseError("expected a section such as 'assume:'", line_no, 1);

        if (section == "declare") {
            const auto words = split_words(body);
            monofun::MonoDecl d;
            d.symbol = std::string(words[0]);
            if (d.symbol.front() == '_' || !std::isalpha(static_cast<unsigned char>(d.symbol.front()))) {
                throw ParseError("bad function name '" + d.symbol + "'", line_no, column + 1);
            }
            if (std::find(functions.begin(), functions.end(), d.symbol) != functions.end()) {
                throw ParseError("function '" + d.symbol + "' declared twice", line_no, column + 1);
            }
            bool direction_set = false;
            for (std::size_t i = 1; i < words.size(); ++i) {
                const auto w = words[i];
                if (w == "increasing") {
                    d.direction = monofun::Direction::Increasing;
                    direction_set = true;
                } else if (w == "decreasing") {
                    d.direction = monofun::Direction::Decreasing;
                    direction_set = true;
                } else if (w == "positive") {
                    d.range = monofun::RangeSign::Positive;
                } else if (w == "nonnegative") {
                    d.range = monofun::RangeSign::Nonnegative;
                } else {
                    throw ParseError("unknown property '" + std::string(w) + "'", line_no, column + 1);
                }
            }
            if (!direction_set) {
                throw ParseError("declare needs 'increasing' or 'decreasing'", line_no, column + 1);
            }
            functions.push_back(d.symbol);
            out.decls.push_back(std::move(d));
        } else if (section == "options") {
            for (const auto w : split_words(body)) {
                const auto eq = w.find('=');
                const auto key = w.substr(0, eq);
                const auto value = eq == std::string_view::npos ? std::string_view{} : w.substr(eq + 1);
                if (key == "max-rounds") out.max_rounds = parse_number<int>(value, line_no, column + 1);
                else if (key == "root-denom-bound") out.root_denom_bound = parse_number<long>(value, line_no, column + 1);
                else throw ParseError("unknown option '" + std::string(key) + "'", line_no, column + 1);
            }
        } else {
            ExprParser p(body, line_no, column, &functions);
            Comparison c = p.comparison();
            if (section == "prove") {
                if (out.goal) throw ParseError("only one goal is allowed", line_no, 1);
                out.goal = std::move(c);
            } else {
                if (section == "refute") out.refutation = true;
                out.hypotheses.push_back(std::move(c));
            }
        }
        if (end == text.size()) break;
    }
    return out;
}

}  // namespace ineq
