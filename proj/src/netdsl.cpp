#include "stpnet/netdsl.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

#include "netdsl_lex.hpp"
#include "stpnet/errors.hpp"
#include "stpnet/logic_core.hpp"

namespace stpnet {

using detail::Tok;
using detail::Token;

namespace {

// Structure matrices beyond this many columns are refused.
constexpr std::size_t kMaxColumns = std::size_t{1} << 26;

std::size_t checked_power(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > kMaxColumns / base) throw DimensionError("state space too large to tabulate");
        r *= base;
    }
    return r;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> tokens) : t_(std::move(tokens)) {}

    const Token& peek() const { return t_[i_]; }
    const Token& peek_at(std::size_t ahead) const { return t_[std::min(i_ + ahead, t_.size() - 1)]; }
    const Token& next() { return t_[i_ + 1 < t_.size() ? i_++ : i_]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    const Token& expect(Tok k, const std::string& what) {
        if (!at(k)) fail("expected " + what + ", found " + found());
        return next();
    }
    void skip_newlines() {
        while (at(Tok::Newline)) next();
    }
    void expect_end() {
        skip_newlines();
        if (!at(Tok::End)) fail("unexpected " + found());
    }
    std::string found() const {
        if (at(Tok::Ident) || at(Tok::Number)) return "'" + peek().text + "'";
        return detail::describe(peek().kind);
    }
    [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }
    [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
        throw ParseError(message, t.line, t.column);
    }

private:
    std::vector<Token> t_;
    std::size_t i_ = 0;
};

std::size_t parse_count(const Token& t) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) Cursor::fail_at(t, "number out of range");
    return v;
}

bool is_reserved(const std::string& s) {
    static const std::set<std::string> words{"table", "delta", "network", "state", "input", "disturbance",
                                             "nominal", "k", "y"};
    return words.count(s) != 0;
}

/// Vector-form position of a written constant.
std::size_t constant_position(const Token& t, std::size_t arity) {
    const std::size_t v = parse_count(t);
    if (arity == 2) {
        if (v > 1) Cursor::fail_at(t, "Boolean constants are 0 or 1");
        return v == 1 ? 0 : 1;
    }
    if (v < 1 || v > arity)
        Cursor::fail_at(t, "arity mismatch: constant " + t.text + " outside 1.." + std::to_string(arity));
    return v - 1;
}

struct ExprScope {
    std::size_t arity;
    std::function<bool(const std::string&)> declared;
};

class ExprParser {
public:
    ExprParser(Cursor& cursor, const ExprScope& scope) : c_(cursor), scope_(scope) {}

    Expr parse() { return implication(); }

private:
    static bool is_implication(Tok k) { return k == Tok::Implies || k == Tok::Iff; }

    void boolean_only(const Token& op) const {
        if (scope_.arity != 2)
            Cursor::fail_at(op, "operator " + op.text + " is Boolean-only; use table(...) for k-valued rules");
    }

    void require_operand(const Token& op) const {
        switch (c_.peek().kind) {
        case Tok::Ident:
        case Tok::Number:
        case Tok::Not:
        case Tok::LParen: return;
        default: Cursor::fail_at(op, "operator " + op.text + " is missing its right operand");
        }
    }

    Expr node(ExprKind kind, const Token& op, std::vector<Expr> args) const {
        Expr e = Expr::op(kind, std::move(args));
        e.line = op.line;
        e.column = op.column;
        return e;
    }

    Expr implication() {
        Expr lhs = disjunction();
        if (!is_implication(c_.peek().kind)) return lhs;
        const Token op = c_.next();
        boolean_only(op);
        require_operand(op);
        Expr rhs = disjunction();
        if (is_implication(c_.peek().kind))
            c_.fail("'->' and '<->' do not chain or mix; add parentheses");
        return node(op.kind == Tok::Iff ? ExprKind::Iff : ExprKind::Implies, op, {std::move(lhs), std::move(rhs)});
    }

    template <class Next>
    Expr left_assoc(Tok tok, ExprKind kind, Next next) {
        Expr lhs = (this->*next)();
        while (c_.at(tok)) {
            const Token op = c_.next();
            boolean_only(op);
            require_operand(op);
            Expr rhs = (this->*next)();
            lhs = node(kind, op, {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Expr disjunction() { return left_assoc(Tok::Or, ExprKind::Or, &ExprParser::exclusive); }
    Expr exclusive() { return left_assoc(Tok::Xor, ExprKind::Xor, &ExprParser::conjunction); }
    Expr conjunction() { return left_assoc(Tok::And, ExprKind::And, &ExprParser::unary); }

    Expr unary() {
        if (c_.at(Tok::Not)) {
            const Token op = c_.next();
            boolean_only(op);
            require_operand(op);
            return node(ExprKind::Not, op, {unary()});
        }
        return primary();
    }

    Expr variable(const Token& t) const {
        if (!scope_.declared(t.text)) Cursor::fail_at(t, "undeclared variable '" + t.text + "'");
        Expr e = Expr::var(t.text);
        e.line = t.line;
        e.column = t.column;
        return e;
    }

    Expr primary() {
        const Token t = c_.peek();
        switch (t.kind) {
        case Tok::Ident:
            c_.next();
            if (t.text == "table") return table(t);
            return variable(t);
        case Tok::Number: {
            c_.next();
            Expr e = Expr::constant(constant_position(t, scope_.arity));
            e.line = t.line;
            e.column = t.column;
            return e;
        }
        case Tok::LParen: {
            c_.next();
            Expr e = implication();
            c_.expect(Tok::RParen, "')'");
            return e;
        }
        default: c_.fail("expected an expression, found " + c_.found());
        }
    }

    Expr table(const Token& head) {
        Expr e;
        e.kind = ExprKind::Table;
        e.line = head.line;
        e.column = head.column;
        c_.expect(Tok::LParen, "'(' after table");
        std::set<std::string> seen;
        do {
            const Token v = c_.expect(Tok::Ident, "variable name");
            if (!seen.insert(v.text).second) Cursor::fail_at(v, "variable '" + v.text + "' repeated in table");
            e.args.push_back(variable(v));
        } while (c_.accept(Tok::Comma));
        c_.expect(Tok::RParen, "')'");
        c_.skip_newlines();
        const Token open = c_.expect(Tok::LBracket, "'['");
        c_.skip_newlines();
        while (c_.at(Tok::Number)) {
            e.table.push_back(constant_position(c_.next(), scope_.arity));
            c_.skip_newlines();
            c_.accept(Tok::Comma);
            c_.skip_newlines();
        }
        c_.expect(Tok::RBracket, "']'");
        const std::size_t want = checked_power(scope_.arity, e.args.size());
        if (e.table.size() != want)
            Cursor::fail_at(open, "arity mismatch: table needs " + std::to_string(want) + " entries, found " +
                                      std::to_string(e.table.size()));
        return e;
    }

    Cursor& c_;
    const ExprScope& scope_;
};

/// `delta <rows> [i1 ... in]`; the cursor sits on the 'delta' keyword.
LogicalMatrix parse_delta_literal(Cursor& c) {
    c.expect(Tok::Ident, "'delta'");
    const std::size_t rows = parse_count(c.expect(Tok::Number, "row count"));
    if (rows == 0) c.fail("delta literal needs at least one row");
    c.skip_newlines();
    c.expect(Tok::LBracket, "'['");
    std::vector<std::size_t> idx;
    c.skip_newlines();
    while (c.at(Tok::Number)) {
        const Token t = c.next();
        const std::size_t v = parse_count(t);
        if (v < 1 || v > rows)
            Cursor::fail_at(t, "delta index " + t.text + " outside 1.." + std::to_string(rows));
        idx.push_back(v);
        c.skip_newlines();
        c.accept(Tok::Comma);
        c.skip_newlines();
    }
    c.expect(Tok::RBracket, "']'");
    return LogicalMatrix::delta(rows, idx);
}

/// `[r11 r12 ...; r21 ...]` with rows split by ';' or line breaks.
BooleanMatrix parse_boolean_literal(Cursor& c) {
    c.expect(Tok::LBracket, "'['");
    std::vector<std::vector<int>> rows;
    std::vector<int> row;
    const Token* rowStart = nullptr;
    Token first = c.peek();
    auto flush = [&] {
        if (row.empty()) return;
        if (!rows.empty() && row.size() != rows.front().size())
            Cursor::fail_at(*rowStart, "row has " + std::to_string(row.size()) + " entries, expected " +
                                           std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
        row.clear();
    };
    Token start = first;
    while (!c.at(Tok::RBracket)) {
        if (c.accept(Tok::Semicolon) || c.accept(Tok::Newline)) {
            flush();
            continue;
        }
        const Token t = c.expect(Tok::Number, "0 or 1");
        if (t.text != "0" && t.text != "1") Cursor::fail_at(t, "Boolean matrix entries are 0 or 1");
        if (row.empty()) {
            start = t;
            rowStart = &start;
        }
        row.push_back(t.text == "1");
        c.accept(Tok::Comma);
    }
    flush();
    c.expect(Tok::RBracket, "']'");
    if (rows.empty()) Cursor::fail_at(first, "empty matrix literal");
    return BooleanMatrix::from_rows(rows);
}

Expr table_over(const LogicalMatrix& m, const std::vector<std::string>& vars) {
    Expr e;
    e.kind = ExprKind::Table;
    for (const auto& v : vars) e.args.push_back(Expr::var(v));
    e.table = m.indices();
    return e;
}

void collect_vars(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == ExprKind::Var) {
        if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
        return;
    }
    for (const auto& a : e.args) collect_vars(a, out);
}

std::string value_label(std::size_t position, std::size_t arity) {
    if (arity == 2) return position == 0 ? "1" : "0";
    return std::to_string(position + 1);
}

std::vector<std::string> tuple_labels(std::size_t count, std::size_t arity) {
    std::vector<std::string> out;
    const std::size_t total = checked_power(arity, count);
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::vector<std::string> digits(count);
        std::size_t rest = idx;
        for (std::size_t d = count; d-- > 0;) {
            digits[d] = value_label(rest % arity, arity);
            rest /= arity;
        }
        std::string label;
        for (std::size_t d = 0; d < count; ++d) {
            if (d && arity > 9) label += ',';
            label += digits[d];
        }
        out.push_back(label);
    }
    return out;
}

LogicalMatrix compile_rule(const Expr& f, const std::vector<std::string>& vars, std::size_t arity,
                           const std::map<std::string, std::size_t>& fixed) {
    if (arity < 2) throw DimensionError("arity must be at least 2");
    std::unordered_map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < vars.size(); ++i) slot.emplace(vars[i], i);
    for (const auto& name : referenced_variables(f))
        if (!slot.count(name) && !fixed.count(name))
            throw ParseError("rule depends on '" + name + "', which is not an argument here", f.line, f.column);

    const std::size_t columns = checked_power(arity, vars.size());
    std::vector<std::size_t> digits(vars.size());
    std::vector<std::size_t> idx(columns);
    auto lookup = [&](const std::string& name) -> std::size_t {
        auto it = slot.find(name);
        if (it != slot.end()) return digits[it->second];
        return fixed.at(name);
    };
    for (std::size_t col = 0; col < columns; ++col) {
        std::size_t rest = col;
        for (std::size_t d = vars.size(); d-- > 0;) {
            digits[d] = rest % arity;
            rest /= arity;
        }
        idx[col] = evaluate(f, arity, lookup);
    }
    return LogicalMatrix(arity, std::move(idx));
}

TransitionSystem build_system(const Network& net, const std::vector<const Expr*>& rules,
                              const std::vector<std::string>& args, const std::map<std::string, std::size_t>& fixed,
                              std::size_t controls, std::size_t disturbances, std::size_t disturbanceVars) {
    if (net.stateVars.empty()) throw DimensionError("network has no state variables");
    LogicalMatrix L = compile_rule(*rules.front(), args, net.arity, fixed);
    for (std::size_t i = 1; i < rules.size(); ++i) L = khatri_rao(L, compile_rule(*rules[i], args, net.arity, fixed));

    const std::size_t n = checked_power(net.arity, net.stateVars.size());
    LogicalMatrix H = net.output ? compile_rule(*net.output, net.stateVars, net.arity, {}) : LogicalMatrix::identity(n);

    TransitionSystem ts(BooleanMatrix(L), std::move(H), controls, disturbances);
    ts.labels.states = tuple_labels(net.stateVars.size(), net.arity);
    ts.labels.inputs = tuple_labels(net.inputVars.size() + disturbanceVars, net.arity);
    ts.labels.outputs = net.output ? tuple_labels(1, net.arity) : ts.labels.states;
    return ts;
}

} // namespace

std::vector<std::string> referenced_variables(const Expr& e) {
    std::vector<std::string> out;
    collect_vars(e, out);
    return out;
}

std::size_t evaluate(const Expr& e, std::size_t arity, const std::function<std::size_t(const std::string&)>& lookup) {
    auto truth = [&](const Expr& sub) { return evaluate(sub, arity, lookup) == 0; };
    auto boolean = [&](bool b) -> std::size_t {
        if (arity != 2)
            throw ParseError("named operators are Boolean-only; use a truth table for k-valued rules", e.line,
                             e.column);
        return b ? 0 : 1;
    };
    switch (e.kind) {
    case ExprKind::Var: return lookup(e.name);
    case ExprKind::Const: return e.value;
    case ExprKind::Not: return boolean(!truth(e.args[0]));
    case ExprKind::And: return boolean(truth(e.args[0]) && truth(e.args[1]));
    case ExprKind::Or: return boolean(truth(e.args[0]) || truth(e.args[1]));
    case ExprKind::Xor: return boolean(truth(e.args[0]) != truth(e.args[1]));
    case ExprKind::Iff: return boolean(truth(e.args[0]) == truth(e.args[1]));
    case ExprKind::Implies: return boolean(!truth(e.args[0]) || truth(e.args[1]));
    case ExprKind::Table: {
        std::size_t idx = 0;
        for (const auto& a : e.args) idx = idx * arity + evaluate(a, arity, lookup);
        return e.table.at(idx);
    }
    }
    throw InternalError("unknown expression kind");
}

std::vector<std::string> Network::arguments() const {
    std::vector<std::string> out(disturbanceVars);
    out.insert(out.end(), inputVars.begin(), inputVars.end());
    out.insert(out.end(), stateVars.begin(), stateVars.end());
    return out;
}

bool looks_like_network(std::string_view text) {
    for (const auto& st : detail::split_statements(text)) {
        auto toks = detail::tokenize(st);
        return toks.front().kind == Tok::Ident && toks.front().text == "network";
    }
    return false;
}

Network parse_network(std::string_view text) {
    Network net;
    struct Pending {
        Cursor cursor;
        std::size_t line;
    };
    std::vector<Pending> rest;
    std::map<std::string, Token> declaredAt;
    bool haveHeader = false;
    bool haveArity = false;

    for (const auto& st : detail::split_statements(text)) {
        Cursor c(detail::tokenize(st));
        const Token head = c.peek();
        if (head.kind != Tok::Ident) c.fail("expected a statement, found " + c.found());
        if (head.text == "network") {
            if (haveHeader) Cursor::fail_at(head, "duplicate definition of network header");
            c.next();
            if (!c.at(Tok::Ident) && !c.at(Tok::Number)) c.fail("expected network name, found " + c.found());
            net.name = c.next().text;
            c.expect_end();
            haveHeader = true;
        } else if (head.text == "k" && c.peek_at(1).kind == Tok::Equals) {
            if (haveArity) Cursor::fail_at(head, "duplicate definition of k");
            c.next();
            c.next();
            const Token v = c.expect(Tok::Number, "arity");
            net.arity = parse_count(v);
            if (net.arity < 2) Cursor::fail_at(v, "arity must be at least 2");
            c.expect_end();
            haveArity = true;
        } else if (head.text == "state" || head.text == "input" || head.text == "disturbance") {
            c.next();
            auto& list = head.text == "state" ? net.stateVars
                         : head.text == "input" ? net.inputVars
                                                : net.disturbanceVars;
            do {
                const Token v = c.expect(Tok::Ident, "variable name");
                if (is_reserved(v.text)) Cursor::fail_at(v, "'" + v.text + "' is a reserved word");
                if (declaredAt.count(v.text)) Cursor::fail_at(v, "duplicate definition of variable '" + v.text + "'");
                declaredAt.emplace(v.text, v);
                list.push_back(v.text);
            } while (c.accept(Tok::Comma));
            c.expect_end();
        } else {
            rest.push_back({std::move(c), st.line});
        }
    }
    if (!haveHeader) throw ParseError("missing 'network <name>' header", 1, 1);
    if (net.stateVars.empty()) throw ParseError("network declares no state variables", 1, 1);

    auto isState = [&](const std::string& v) {
        return std::find(net.stateVars.begin(), net.stateVars.end(), v) != net.stateVars.end();
    };
    auto isDisturbance = [&](const std::string& v) {
        return std::find(net.disturbanceVars.begin(), net.disturbanceVars.end(), v) != net.disturbanceVars.end();
    };
    auto stateIndex = [&](const std::string& v) {
        return static_cast<std::size_t>(std::find(net.stateVars.begin(), net.stateVars.end(), v) -
                                        net.stateVars.begin());
    };
    const ExprScope anyVar{net.arity, [&](const std::string& v) { return declaredAt.count(v) != 0; }};

    const auto args = net.arguments();
    auto rhs = [&](Cursor& c, const std::vector<std::string>& over) {
        if (c.at(Tok::Ident) && c.peek().text == "delta") {
            const Token at = c.peek();
            LogicalMatrix m = parse_delta_literal(c);
            const std::size_t want = checked_power(net.arity, over.size());
            if (m.rows() != net.arity || m.cols() != want)
                Cursor::fail_at(at, "arity mismatch: literal must be delta " + std::to_string(net.arity) + " with " +
                                        std::to_string(want) + " columns");
            Expr e = table_over(m, over);
            e.line = at.line;
            e.column = at.column;
            return e;
        }
        return ExprParser(c, anyVar).parse();
    };
    auto rejectReferences = [](const Expr& e, const Token& at, auto&& forbidden, const std::string& why) {
        for (const auto& v : referenced_variables(e))
            if (forbidden(v)) Cursor::fail_at(at, why + " (found '" + v + "')");
    };

    std::vector<std::optional<Expr>> updates(net.stateVars.size());
    net.nominalUpdates.assign(net.stateVars.size(), std::nullopt);
    bool haveNominal = false;

    for (auto& [c, line] : rest) {
        const Token head = c.next();
        if (head.text == "nominal") {
            haveNominal = true;
            const Token v = c.expect(Tok::Ident, "variable name");
            if (c.accept(Tok::Prime)) {
                if (!isState(v.text)) Cursor::fail_at(v, "'" + v.text + "' is not a state variable");
                auto& slot = net.nominalUpdates[stateIndex(v.text)];
                if (slot) Cursor::fail_at(v, "duplicate definition of nominal rule for '" + v.text + "'");
                c.expect(Tok::Equals, "'='");
                Expr e = rhs(c, args);
                rejectReferences(e, v, isDisturbance, "nominal rule must not depend on a disturbance");
                slot = std::move(e);
            } else {
                if (!isDisturbance(v.text)) Cursor::fail_at(v, "'" + v.text + "' is not a disturbance variable");
                if (net.nominalDisturbance.count(v.text))
                    Cursor::fail_at(v, "duplicate definition of nominal value for '" + v.text + "'");
                c.expect(Tok::Equals, "'='");
                net.nominalDisturbance[v.text] = constant_position(c.expect(Tok::Number, "constant"), net.arity);
            }
            c.expect_end();
        } else if (c.at(Tok::Prime)) {
            c.next();
            if (!isState(head.text)) {
                if (declaredAt.count(head.text))
                    Cursor::fail_at(head, "'" + head.text + "' is not a state variable");
                Cursor::fail_at(head, "undeclared variable '" + head.text + "'");
            }
            auto& slot = updates[stateIndex(head.text)];
            if (slot) Cursor::fail_at(head, "duplicate definition of update for '" + head.text + "'");
            c.expect(Tok::Equals, "'='");
            slot = rhs(c, args);
            c.expect_end();
        } else if (head.text == "y" && c.at(Tok::Equals)) {
            if (net.output) Cursor::fail_at(head, "duplicate definition of output rule");
            c.next();
            Expr e = rhs(c, net.stateVars);
            rejectReferences(e, head, [&](const std::string& v) { return !isState(v); },
                             "output rule may only reference state variables");
            net.output = std::move(e);
            c.expect_end();
        } else {
            Cursor::fail_at(head, "unknown statement '" + head.text + "'");
        }
    }

    for (std::size_t i = 0; i < updates.size(); ++i) {
        if (!updates[i]) {
            const Token& at = declaredAt.at(net.stateVars[i]);
            Cursor::fail_at(at, "state variable '" + net.stateVars[i] + "' has no update rule");
        }
        net.updates.push_back(std::move(*updates[i]));
    }
    if (haveNominal && net.disturbanceVars.empty())
        throw ParseError("'nominal' lines need declared disturbances", rest.front().line, 1);
    if (!haveNominal) net.nominalUpdates.clear();
    return net;
}

TransitionSpec parse_ts(std::string_view text) {
    TransitionSpec spec;
    bool haveHeader = false;
    bool haveStates = false;
    bool haveInputs = false;
    bool haveOutputs = false;
    std::vector<Cursor> rest;

    for (const auto& st : detail::split_statements(text)) {
        Cursor c(detail::tokenize(st));
        const Token head = c.peek();
        if (head.kind != Tok::Ident) c.fail("expected a statement, found " + c.found());
        auto count = [&](bool& seen, std::size_t& into) {
            if (seen) Cursor::fail_at(head, "duplicate definition of '" + head.text + "'");
            c.next();
            into = parse_count(c.expect(Tok::Number, "count"));
            c.expect_end();
            seen = true;
        };
        if (head.text == "ts") {
            if (haveHeader) Cursor::fail_at(head, "duplicate definition of ts header");
            c.next();
            if (!c.at(Tok::Ident) && !c.at(Tok::Number)) c.fail("expected system name, found " + c.found());
            spec.name = c.next().text;
            c.expect_end();
            haveHeader = true;
        } else if (head.text == "states") {
            count(haveStates, spec.states);
            if (spec.states == 0) Cursor::fail_at(head, "a transition system needs at least one state");
        } else if (head.text == "inputs") {
            count(haveInputs, spec.inputs);
            if (spec.inputs == 0) Cursor::fail_at(head, "inputs must be at least 1");
        } else if (head.text == "outputs") {
            count(haveOutputs, spec.outputs);
        } else {
            rest.push_back(std::move(c));
        }
    }
    if (!haveHeader) throw ParseError("missing 'ts <name>' header", 1, 1);
    if (!haveStates) throw ParseError("missing 'states <n>' line", 1, 1);

    auto index = [](const Token& t, std::size_t limit, const char* what) {
        const std::size_t v = parse_count(t);
        if (v < 1 || v > limit)
            Cursor::fail_at(t, std::string(what) + " " + t.text + " out of range 1.." + std::to_string(limit));
        return v - 1;
    };
    std::size_t maxObserved = 0;
    std::vector<std::pair<std::size_t, Token>> obsTokens;

    for (auto& c : rest) {
        const Token head = c.next();
        if (head.text == "trans") {
            TransitionSpec::Group g;
            g.state = index(c.expect(Tok::Number, "state index"), spec.states, "state");
            g.input = index(c.expect(Tok::Number, "input index"), spec.inputs, "input");
            c.expect(Tok::Implies, "'->'");
            while (c.at(Tok::Number)) g.successors.push_back(index(c.next(), spec.states, "state"));
            c.expect_end();
            std::sort(g.successors.begin(), g.successors.end());
            g.successors.erase(std::unique(g.successors.begin(), g.successors.end()), g.successors.end());
            spec.transitions.push_back(std::move(g));
        } else if (head.text == "obs") {
            const Token st = c.expect(Tok::Number, "state index");
            const std::size_t s = index(st, spec.states, "state");
            c.expect(Tok::Implies, "'->'");
            const Token o = c.expect(Tok::Number, "output index");
            const std::size_t out = haveOutputs ? index(o, spec.outputs, "output") : parse_count(o);
            if (!haveOutputs && out == 0) Cursor::fail_at(o, "output indices start at 1");
            c.expect_end();
            if (spec.observations.count(s)) Cursor::fail_at(st, "duplicate definition of observation for state " + st.text);
            spec.observations[s] = haveOutputs ? out : out - 1;
            maxObserved = std::max(maxObserved, haveOutputs ? out + 1 : out);
            obsTokens.emplace_back(s, st);
        } else if (head.text == "L" && c.at(Tok::Equals)) {
            c.next();
            const Token at = c.peek();
            BooleanMatrix L = (c.at(Tok::Ident) && c.peek().text == "delta") ? BooleanMatrix(parse_delta_literal(c))
                                                                              : parse_boolean_literal(c);
            c.expect_end();
            if (L.rows() != spec.states || L.cols() != spec.states * spec.inputs)
                Cursor::fail_at(at, "L must be " + std::to_string(spec.states) + "x" +
                                        std::to_string(spec.states * spec.inputs));
            for (std::size_t col = 0; col < L.cols(); ++col) {
                auto succ = L.column_support(col);
                if (succ.empty()) continue;
                spec.transitions.push_back({col % spec.states, col / spec.states, std::move(succ)});
            }
        } else if (head.text == "H" && c.at(Tok::Equals)) {
            c.next();
            const Token at = c.peek();
            LogicalMatrix H = parse_delta_literal(c);
            c.expect_end();
            if (H.cols() != spec.states) Cursor::fail_at(at, "H must have one column per state");
            if (haveOutputs && H.rows() != spec.outputs) Cursor::fail_at(at, "H row count differs from 'outputs'");
            for (std::size_t s = 0; s < H.cols(); ++s) {
                if (spec.observations.count(s))
                    Cursor::fail_at(at, "duplicate definition of observation for state " + std::to_string(s + 1));
                spec.observations[s] = H.index(s);
                obsTokens.emplace_back(s, at);
            }
            maxObserved = std::max(maxObserved, H.rows());
        } else {
            Cursor::fail_at(head, "unknown statement '" + head.text + "'");
        }
    }

    if (!haveOutputs && !spec.observations.empty()) spec.outputs = maxObserved;
    if (!spec.observations.empty() && spec.observations.size() != spec.states) {
        for (std::size_t s = 0; s < spec.states; ++s)
            if (!spec.observations.count(s))
                throw ParseError("state " + std::to_string(s + 1) + " has no observation", obsTokens.front().second.line, 1);
    }
    if (haveOutputs && spec.outputs > 0 && spec.observations.empty())
        throw ParseError("'outputs' declared but no observations given", 1, 1);
    return spec;
}

LogicalMatrix structure_matrix(const Expr& f, const std::vector<std::string>& vars, std::size_t arity) {
    return compile_rule(f, vars, arity, {});
}

TransitionSystem assemble_assr(const Network& net) {
    std::vector<const Expr*> rules;
    for (const auto& e : net.updates) rules.push_back(&e);
    return build_system(net, rules, net.arguments(), {}, checked_power(net.arity, net.inputVars.size()),
                        checked_power(net.arity, net.disturbanceVars.size()), net.disturbanceVars.size());
}

TransitionSystem assemble_nominal(const Network& net) {
    std::vector<const Expr*> rules;
    for (std::size_t i = 0; i < net.updates.size(); ++i) {
        const bool overridden = i < net.nominalUpdates.size() && net.nominalUpdates[i];
        rules.push_back(overridden ? &*net.nominalUpdates[i] : &net.updates[i]);
    }
    std::vector<std::string> args(net.inputVars);
    args.insert(args.end(), net.stateVars.begin(), net.stateVars.end());
    for (std::size_t i = 0; i < rules.size(); ++i)
        for (const auto& v : referenced_variables(*rules[i]))
            if (std::find(net.disturbanceVars.begin(), net.disturbanceVars.end(), v) != net.disturbanceVars.end() &&
                !net.nominalDisturbance.count(v))
                throw ParseError("nominal model of '" + net.stateVars[i] + "' depends on free disturbance '" + v +
                                     "'; give a nominal rule for it or fix the disturbance with 'nominal " + v + " = <value>'",
                                 rules[i]->line, rules[i]->column);
    return build_system(net, rules, args, net.nominalDisturbance, checked_power(net.arity, net.inputVars.size()), 1,
                        0);
}

DisturbedModel assemble_disturbed_model(const Network& net) {
    if (!net.disturbed()) throw DimensionError("network declares no disturbance variables");
    return DisturbedModel(assemble_nominal(net), assemble_assr(net));
}

TransitionSystem spec_to_ts(const TransitionSpec& spec) {
    const std::size_t n = spec.states;
    BooleanMatrix L(n, n * spec.inputs);
    for (const auto& g : spec.transitions) {
        if (g.state >= n || g.input >= spec.inputs) throw DimensionError("transition index out of range");
        for (auto s : g.successors) L.set(s, g.input * n + g.state);
    }
    LogicalMatrix H = LogicalMatrix::identity(n);
    if (!spec.observations.empty()) {
        std::vector<std::size_t> idx(n);
        for (std::size_t s = 0; s < n; ++s) {
            auto it = spec.observations.find(s);
            if (it == spec.observations.end()) throw DimensionError("state " + std::to_string(s + 1) + " unobserved");
            idx[s] = it->second;
        }
        H = LogicalMatrix(spec.outputs, std::move(idx));
    }
    TransitionSystem ts(std::move(L), std::move(H), spec.inputs);
    for (std::size_t s = 0; s < n; ++s) ts.labels.states.push_back("x" + std::to_string(s + 1));
    for (std::size_t u = 0; u < spec.inputs; ++u) ts.labels.inputs.push_back("u" + std::to_string(u + 1));
    for (std::size_t o = 0; o < ts.outputs(); ++o)
        ts.labels.outputs.push_back(spec.observations.empty() ? ts.labels.states[o] : "O" + std::to_string(o + 1));
    return ts;
}

std::string print_ts(const TransitionSpec& spec) {
    std::ostringstream out;
    out << "ts " << (spec.name.empty() ? "unnamed" : spec.name) << "\n";
    out << "states " << spec.states << "\n";
    out << "inputs " << spec.inputs << "\n";
    if (!spec.observations.empty()) out << "outputs " << spec.outputs << "\n";
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::size_t>> merged;
    for (const auto& g : spec.transitions) merged[{g.state, g.input}].insert(g.successors.begin(), g.successors.end());
    for (const auto& [key, succ] : merged) {
        out << "trans " << key.first + 1 << " " << key.second + 1 << " ->";
        for (auto s : succ) out << " " << s + 1;
        out << "\n";
    }
    for (const auto& [s, o] : spec.observations) out << "obs " << s + 1 << " -> " << o + 1 << "\n";
    return out.str();
}

std::string print_delta(const LogicalMatrix& m) {
    std::ostringstream out;
    out << "delta " << m.rows() << " [";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m.index(j) + 1;
    out << "]";
    return out.str();
}

} // namespace stpnet
