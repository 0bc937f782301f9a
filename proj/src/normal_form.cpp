#include "ineq/normal_form.hpp"

#include <algorithm>
#include <sstream>

namespace ineq {

namespace {

int three_way(const Rational &a, const Rational &b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

int three_way(long a, long b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

bool is_literal_zero(const RawTerm &t) {
    return t.kind() == RawTerm::Kind::Scale && t.factor().is_zero() &&
           t.children()[0].kind() == RawTerm::Kind::One;
}

}  // namespace

TermStore::TermStore() {
    Node one;
    one.kind = PretermKind::One;
    one.name = "1";
    intern(std::move(one), "1");
}

PretermId TermStore::intern(Node node, const std::string &key) {
    auto it = index_.find(key);
    if (it != index_.end()) {
        return it->second;
    }
    const auto id = static_cast<PretermId>(nodes_.size());
    nodes_.push_back(std::move(node));
    index_.emplace(key, id);
    return id;
}

PretermId TermStore::variable(std::string_view name) {
    const std::string key = "V:" + std::string(name);
    if (auto it = index_.find(key); it != index_.end()) {
        return it->second;
    }
    Node node;
    node.kind = PretermKind::Var;
    node.name = std::string(name);
    node.var_index = var_names_.size();
    var_names_.emplace_back(name);
    return intern(std::move(node), key);
}

std::optional<PretermId> TermStore::find_variable(std::string_view name) const {
    auto it = index_.find("V:" + std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

PretermId TermStore::application(std::string_view symbol, const NormalTerm &argument) {
    std::string key = "F:" + std::string(symbol) + "(" + argument.coeff.to_string() + "," +
                      std::to_string(argument.body) + ")";
    Node node;
    node.kind = PretermKind::App;
    node.name = std::string(symbol);
    node.argument = argument;
    return intern(std::move(node), key);
}

void TermStore::register_variables(const RawTerm &t) {
    std::vector<std::string> names;
    t.collect_variables(names);
    for (const auto &n : names) variable(n);
}

NormalTerm TermStore::constant(const Rational &value) const {
    if (value.is_zero()) return NormalTerm::zero();
    return {value, one()};
}

NormalTerm TermStore::normalize(const RawTerm &t) {
    register_variables(t);
    switch (t.kind()) {
    case RawTerm::Kind::One:
        return term(one());
    case RawTerm::Kind::Var:
        return term(variable(t.name()));
    case RawTerm::Kind::Sum: {
        NormalTerm acc = NormalTerm::zero();
        for (const auto &c : t.children()) acc = add(acc, normalize(c));
        return acc;
    }
    case RawTerm::Kind::Neg:
        return negate(normalize(t.children()[0]));
    case RawTerm::Kind::Prod: {
        NormalTerm acc = term(one());
        for (const auto &c : t.children()) acc = multiply(acc, normalize(c));
        return acc;
    }
    case RawTerm::Kind::Div: {
        if (is_literal_zero(t.children()[1])) {
            throw TermError("zero-denominator literal");
        }
        const NormalTerm num = normalize(t.children()[0]);
        const NormalTerm den = normalize(t.children()[1]);
        return multiply(num, invert(den));
    }
    case RawTerm::Kind::Pow:
        return pow_int(normalize(t.children()[0]), t.exponent());
    case RawTerm::Kind::Scale:
        return scale(t.factor(), normalize(t.children()[0]));
    case RawTerm::Kind::App: {
        const NormalTerm arg = normalize(t.children()[0]);
        return term(application(t.name(), arg));
    }
    }
    throw TermError("corrupt term");
}

std::vector<Summand> TermStore::expand_sum(const NormalTerm &t) const {
    if (t.is_zero()) return {};
    if (kind(t.body) == PretermKind::Add) {
        std::vector<Summand> out;
        for (const auto &s : summands(t.body)) out.push_back({t.coeff * s.coeff, s.term});
        return out;
    }
    return {{t.coeff, t.body}};
}

std::vector<Factor> TermStore::expand_product(PretermId body) const {
    switch (kind(body)) {
    case PretermKind::One:
        return {};
    case PretermKind::Mul:
        return factors(body);
    default:
        return {{body, 1}};
    }
}

NormalTerm TermStore::make_sum(std::vector<Summand> terms) {
    // merge equal preterms, drop cancellations
    std::map<PretermId, Rational> merged;
    for (auto &s : terms) merged[s.term] += s.coeff;
    std::vector<Summand> live;
    for (auto &[id, c] : merged) {
        if (!c.is_zero()) live.push_back({c, id});
    }
    if (live.empty()) return NormalTerm::zero();
    std::sort(live.begin(), live.end(),
              [this](const Summand &a, const Summand &b) { return compare(a.term, b.term) > 0; });
    if (live.size() == 1) return {live[0].coeff, live[0].term};

    const Rational lead = live[0].coeff;
    Node node;
    node.kind = PretermKind::Add;
    int max_rank = 0;
    std::string key = "A";
    for (const auto &s : live) {
        const Rational c = s.coeff / lead;
        node.summands.push_back({c, s.term});
        max_rank = std::max(max_rank, rank(s.term));
        key += "|" + std::to_string(s.term) + ":" + c.to_string();
    }
    node.rank = max_rank + 1;
    return {lead, intern(std::move(node), key)};
}

PretermId TermStore::make_product(std::vector<Factor> factors) {
    std::map<PretermId, long> merged;
    for (const auto &f : factors) merged[f.base] += f.exponent;
    std::vector<Factor> live;
    for (auto &[id, e] : merged) {
        if (e != 0) live.push_back({id, e});
    }
    if (live.empty()) return one();
    if (live.size() == 1 && live[0].exponent == 1) return live[0].base;
    std::sort(live.begin(), live.end(),
              [this](const Factor &a, const Factor &b) { return compare(a.base, b.base) > 0; });

    Node node;
    node.kind = PretermKind::Mul;
    int max_rank = 0;
    std::string key = "M";
    for (const auto &f : live) {
        max_rank = std::max(max_rank, rank(f.base));
        key += "|" + std::to_string(f.base) + "^" + std::to_string(f.exponent);
    }
    node.factors = std::move(live);
    node.rank = max_rank % 2 == 0 ? max_rank + 2 : max_rank + 1;
    return intern(std::move(node), key);
}

NormalTerm TermStore::add(const NormalTerm &a, const NormalTerm &b) {
    auto terms = expand_sum(a);
    auto rhs = expand_sum(b);
    terms.insert(terms.end(), rhs.begin(), rhs.end());
    return make_sum(std::move(terms));
}

NormalTerm TermStore::subtract(const NormalTerm &a, const NormalTerm &b) {
    return add(a, negate(b));
}

NormalTerm TermStore::multiply(const NormalTerm &a, const NormalTerm &b) {
    if (a.is_zero() || b.is_zero()) return NormalTerm::zero();
    auto fs = expand_product(a.body);
    auto rhs = expand_product(b.body);
    fs.insert(fs.end(), rhs.begin(), rhs.end());
    return {a.coeff * b.coeff, make_product(std::move(fs))};
}

NormalTerm TermStore::negate(const NormalTerm &a) const {
    if (a.is_zero()) return a;
    return {-a.coeff, a.body};
}

NormalTerm TermStore::invert(const NormalTerm &a) {
    return pow_int(a, -1);
}

NormalTerm TermStore::pow_int(const NormalTerm &a, long exponent) {
    if (exponent == 0) {
        throw TermError("exponent 0 is not allowed; simplify the term first");
    }
    if (a.is_zero()) {
        if (exponent < 0) throw TermError("inverse of zero");
        return a;
    }
    auto fs = expand_product(a.body);
    for (auto &f : fs) f.exponent *= exponent;
    return {a.coeff.pow(exponent), make_product(std::move(fs))};
}

NormalTerm TermStore::scale(const Rational &factor, const NormalTerm &a) const {
    if (factor.is_zero() || a.is_zero()) return NormalTerm::zero();
    return {factor * a.coeff, a.body};
}

int TermStore::compare_basic(PretermId s, PretermId t) const {
    auto cls = [this](PretermId id) {
        switch (kind(id)) {
        case PretermKind::One: return 0;
        case PretermKind::Var: return 1;
        default: return 2;
        }
    };
    const int cs = cls(s);
    const int ct = cls(t);
    if (cs != ct) return cs > ct ? -1 : 1;
    if (cs == 1) {
        const auto is = variable_index(s);
        const auto it = variable_index(t);
        return is > it ? -1 : (is < it ? 1 : 0);
    }
    if (cs == 2) {
        const int sym = name(s).compare(name(t));
        if (sym != 0) return sym > 0 ? -1 : 1;
        return compare_terms(argument(s), argument(t));
    }
    return 0;
}

int TermStore::compare(PretermId s, PretermId t) const {
    if (s == t) return 0;
    const int rs = rank(s);
    const int rt = rank(t);
    if (rs != rt) return rs < rt ? -1 : 1;
    if (rs == 0) return compare_basic(s, t);

    if (rs % 2 == 1) {
        const auto &a = summands(s);
        const auto &b = summands(t);
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() || j < b.size()) {
            int order;
            if (i == a.size()) order = -1;
            else if (j == b.size()) order = 1;
            else order = compare(a[i].term, b[j].term);
            if (order == 0) {
                if (int c = three_way(a[i].coeff, b[j].coeff); c != 0) return c;
                ++i;
                ++j;
            } else if (order > 0) {
                return three_way(a[i].coeff, Rational(0));
            } else {
                return three_way(Rational(0), b[j].coeff);
            }
        }
        return 0;
    }

    const auto &a = factors(s);
    const auto &b = factors(t);
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        int order;
        if (i == a.size()) order = -1;
        else if (j == b.size()) order = 1;
        else order = compare(a[i].base, b[j].base);
        if (order == 0) {
            if (int c = three_way(a[i].exponent, b[j].exponent); c != 0) return c;
            ++i;
            ++j;
        } else if (order > 0) {
            return three_way(a[i].exponent, 0L);
        } else {
            return three_way(0L, b[j].exponent);
        }
    }
    return 0;
}

int TermStore::compare_terms(const NormalTerm &a, const NormalTerm &b) const {
    if (a.is_zero() && b.is_zero()) return 0;
    if (a.is_zero()) return b.coeff.sign() > 0 ? -1 : 1;
    if (b.is_zero()) return a.coeff.sign() < 0 ? -1 : 1;
    const int sa = a.coeff.sign();
    const int sb = b.coeff.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    int order = compare(a.body, b.body);
    if (sa < 0) order = -order;
    if (order != 0) return order;
    return three_way(a.coeff, b.coeff);
}

bool TermStore::well_formed(PretermId id) const {
    if (id >= nodes_.size()) return false;
    const Node &n = nodes_[id];
    switch (n.kind) {
    case PretermKind::One:
    case PretermKind::Var:
        return n.rank == 0;
    case PretermKind::App:
        return n.rank == 0 && (n.argument.is_zero() || well_formed(n.argument.body));
    case PretermKind::Add: {
        if (n.summands.size() < 2 || n.summands[0].coeff != Rational(1)) return false;
        int max_rank = 0;
        for (std::size_t i = 0; i < n.summands.size(); ++i) {
            const auto &s = n.summands[i];
            if (s.coeff.is_zero() || kind(s.term) == PretermKind::Add || !well_formed(s.term)) {
                return false;
            }
            if (i > 0 && compare(n.summands[i - 1].term, s.term) <= 0) return false;
            max_rank = std::max(max_rank, rank(s.term));
        }
        return n.rank == max_rank + 1 && n.rank % 2 == 1;
    }
    case PretermKind::Mul: {
        if (n.factors.empty()) return false;
        if (n.factors.size() == 1 && n.factors[0].exponent == 1) return false;
        int max_rank = 0;
        for (std::size_t i = 0; i < n.factors.size(); ++i) {
            const auto &f = n.factors[i];
            const auto k = kind(f.base);
            if (f.exponent == 0 || k == PretermKind::Mul || k == PretermKind::One ||
                !well_formed(f.base)) {
                return false;
            }
            if (i > 0 && compare(n.factors[i - 1].base, f.base) <= 0) return false;
            max_rank = std::max(max_rank, rank(f.base));
        }
        const int expected = max_rank % 2 == 0 ? max_rank + 2 : max_rank + 1;
        return n.rank == expected;
    }
    }
    return false;
}

std::string TermStore::render_body(PretermId id, bool wrap_sums) const {
    std::ostringstream os;
    switch (kind(id)) {
    case PretermKind::One:
        os << "1";
        break;
    case PretermKind::Var:
        os << name(id);
        break;
    case PretermKind::App:
        os << name(id) << '(' << render(argument(id)) << ')';
        break;
    case PretermKind::Add: {
        if (wrap_sums) os << '(';
        bool first = true;
        for (const auto &s : summands(id)) {
            const bool negative = s.coeff.sign() < 0;
            const Rational mag = s.coeff.abs();
            if (first) {
                if (negative) os << '-';
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            if (kind(s.term) == PretermKind::One) {
                os << mag;
            } else {
                if (mag != Rational(1)) os << mag << " * ";
                os << render_body(s.term, true);
            }
        }
        if (wrap_sums) os << ')';
        break;
    }
    case PretermKind::Mul: {
        bool first = true;
        for (const auto &f : factors(id)) {
            if (!first) os << " * ";
            first = false;
            os << render_body(f.base, true);
            if (f.exponent != 1) os << '^' << f.exponent;
        }
        break;
    }
    }
    return os.str();
}

std::string TermStore::render(PretermId id) const {
    return render_body(id, false);
}

std::string TermStore::render(const NormalTerm &t) const {
    if (t.is_zero()) return "0";
    if (kind(t.body) == PretermKind::One) return t.coeff.to_string();
    if (t.coeff == Rational(1)) return render_body(t.body, false);
    if (t.coeff == Rational(-1)) return "-" + render_body(t.body, true);
    return t.coeff.to_string() + " * " + render_body(t.body, true);
}

Rational TermStore::evaluate_preterm(PretermId id, const Assignment &env,
                                     const FunctionTable *functions) const {
    switch (kind(id)) {
    case PretermKind::One:
        return Rational(1);
    case PretermKind::Var: {
        auto it = env.find(name(id));
        if (it == env.end()) throw TermError("unbound variable '" + name(id) + "'");
        return it->second;
    }
    case PretermKind::App: {
        if (functions == nullptr) throw TermError("no interpretation for function '" + name(id) + "'");
        auto it = functions->find(name(id));
        if (it == functions->end()) {
            throw TermError("no interpretation for function '" + name(id) + "'");
        }
        return it->second(evaluate(argument(id), env, functions));
    }
    case PretermKind::Add: {
        Rational total;
        for (const auto &s : summands(id)) total += s.coeff * evaluate_preterm(s.term, env, functions);
        return total;
    }
    case PretermKind::Mul: {
        Rational total(1);
        for (const auto &f : factors(id)) {
            const Rational base = evaluate_preterm(f.base, env, functions);
            if (base.is_zero()) return Rational(0);
            total *= base.pow(f.exponent);
        }
        return total;
    }
    }
    throw TermError("corrupt preterm");
}

Rational TermStore::evaluate(const NormalTerm &t, const Assignment &env,
                             const FunctionTable *functions) const {
    if (t.is_zero()) return Rational(0);
    return t.coeff * evaluate_preterm(t.body, env, functions);
}

bool equal_terms(const RawTerm &s, const RawTerm &t) {
    TermStore store;
    store.register_variables(s);
    store.register_variables(t);
    return store.normalize(s) == store.normalize(t);
}

}  // namespace ineq
