#include "expfield/formula.hpp"

#include <cctype>
#include <optional>

namespace expfield {

Term Term::num(const Rational& r) {
    Term t;
    t.kind = Kind::Num;
    t.value = r;
    return t;
}

Term Term::var(std::string name) {
    Term t;
    t.kind = Kind::Var;
    t.name = std::move(name);
    return t;
}

namespace {

Term binary(Term::Kind k, Term a, Term b) {
    Term t;
    t.kind = k;
    t.args.push_back(std::move(a));
    t.args.push_back(std::move(b));
    return t;
}

Term unary_term(Term::Kind k, Term a) {
    Term t;
    t.kind = k;
    t.args.push_back(std::move(a));
    return t;
}

}  // namespace

Term Term::add(Term a, Term b) { return binary(Kind::Add, std::move(a), std::move(b)); }
Term Term::sub(Term a, Term b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
Term Term::mul(Term a, Term b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
Term Term::neg(Term a) { return unary_term(Kind::Neg, std::move(a)); }
Term Term::exp(Term a) { return unary_term(Kind::Exp, std::move(a)); }

Term Term::pow(Term a, unsigned k) {
    Term t = unary_term(Kind::Pow, std::move(a));
    t.exponent = k;
    return t;
}

bool operator==(const Term& a, const Term& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Term::Kind::Num: return a.value == b.value;
        case Term::Kind::Var: return a.name == b.name;
        case Term::Kind::Pow:
            if (a.exponent != b.exponent) return false;
            break;
        default: break;
    }
    return a.args == b.args;
}

Formula Formula::truth() { return Formula{}; }

Formula Formula::falsity() {
    Formula f;
    f.kind = Kind::False;
    return f;
}

Formula Formula::eq(Term a, Term b) {
    Formula f;
    f.kind = Kind::Eq;
    f.terms = {std::move(a), std::move(b)};
    return f;
}

Formula Formula::pred(std::string name, std::vector<Term> args) {
    if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0])))
        throw DomainError("predicate names start with an uppercase letter: " + name);
    Formula f;
    f.kind = Kind::Pred;
    f.name = std::move(name);
    f.terms = std::move(args);
    return f;
}

Formula Formula::negation(Formula g) {
    Formula f;
    f.kind = Kind::Not;
    f.subs.push_back(std::move(g));
    return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
    if (fs.empty()) return truth();
    if (fs.size() == 1) return std::move(fs.front());
    Formula f;
    f.kind = Kind::And;
    f.subs = std::move(fs);
    return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
    if (fs.empty()) return falsity();
    if (fs.size() == 1) return std::move(fs.front());
    Formula f;
    f.kind = Kind::Or;
    f.subs = std::move(fs);
    return f;
}

Formula Formula::implies(Formula a, Formula b) {
    Formula f;
    f.kind = Kind::Implies;
    f.subs.push_back(std::move(a));
    f.subs.push_back(std::move(b));
    return f;
}

namespace {

Formula quantifier(Formula::Kind k, std::vector<std::string> vars, Formula body) {
    if (vars.empty()) return body;
    Formula f;
    f.kind = k;
    f.vars = std::move(vars);
    f.subs.push_back(std::move(body));
    return f;
}

Formula bounded(Formula::Kind k, std::vector<std::string> vars, Domain d, bool nonzero, Formula body) {
    if (vars.empty()) throw DomainError("bounded quantifier over an empty tuple");
    Formula f = quantifier(k, std::move(vars), std::move(body));
    f.domain = d;
    f.nonzero = nonzero;
    return f;
}

}  // namespace

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
    return quantifier(Kind::Forall, std::move(vars), std::move(body));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
    return quantifier(Kind::Exists, std::move(vars), std::move(body));
}

Formula Formula::uncountably(std::string var, Formula body) {
    return quantifier(Kind::Uncountably, {std::move(var)}, std::move(body));
}

Formula Formula::forall_in(std::vector<std::string> vars, Domain d, bool nonzero, Formula body) {
    return bounded(Kind::ForallIn, std::move(vars), d, nonzero, std::move(body));
}

Formula Formula::exists_in(std::vector<std::string> vars, Domain d, bool nonzero, Formula body) {
    return bounded(Kind::ExistsIn, std::move(vars), d, nonzero, std::move(body));
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Formula::Kind::ForallIn || a.kind == Formula::Kind::ExistsIn) {
        if (a.domain != b.domain || a.nonzero != b.nonzero) return false;
    }
    return a.name == b.name && a.terms == b.terms && a.subs == b.subs && a.vars == b.vars;
}

// ---------------------------------------------------------------- rendering

namespace {

// Binding strength of terms: sum < product < negation < power < atom.
int term_level(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Add:
        case Term::Kind::Sub: return 1;
        case Term::Kind::Mul: return 2;
        case Term::Kind::Neg: return 3;
        case Term::Kind::Pow: return 4;
        case Term::Kind::Num: return (t.value.sign() < 0 || !t.value.is_integer()) ? 3 : 5;
        default: return 5;
    }
}

void render_term(const Term& t, int min_level, std::string& out) {
    if (term_level(t) < min_level) {
        out += '(';
        render_term(t, 0, out);
        out += ')';
        return;
    }
    switch (t.kind) {
        case Term::Kind::Num: out += t.value.to_string(); break;
        case Term::Kind::Var: out += t.name; break;
        case Term::Kind::Add:
        case Term::Kind::Sub:
            render_term(t.args[0], 1, out);
            out += t.kind == Term::Kind::Add ? " + " : " - ";
            render_term(t.args[1], 2, out);
            break;
        case Term::Kind::Mul:
            render_term(t.args[0], 2, out);
            out += '*';
            render_term(t.args[1], 3, out);
            break;
        case Term::Kind::Neg:
            out += '-';
            // "-2" would read back as a literal
            render_term(t.args[0], t.args[0].kind == Term::Kind::Num ? 6 : 3, out);
            break;
        case Term::Kind::Pow:
            render_term(t.args[0], 5, out);
            out += '^';
            out += std::to_string(t.exponent);
            break;
        case Term::Kind::Exp:
            out += "exp(";
            render_term(t.args[0], 0, out);
            out += ')';
            break;
    }
}

bool is_quantifier(const Formula& f) {
    switch (f.kind) {
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
        case Formula::Kind::Uncountably:
        case Formula::Kind::ForallIn:
        case Formula::Kind::ExistsIn: return true;
        default: return false;
    }
}

int formula_level(const Formula& f) {
    if (is_quantifier(f)) return 0;
    switch (f.kind) {
        case Formula::Kind::Implies: return 1;
        case Formula::Kind::Or: return 2;
        case Formula::Kind::And: return 3;
        default: return 4;
    }
}

void join_vars(const std::vector<std::string>& vars, std::string& out) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out += ", ";
        out += vars[i];
    }
}

void render_formula(const Formula& f, int min_level, std::string& out) {
    if (formula_level(f) < min_level) {
        out += '(';
        render_formula(f, 0, out);
        out += ')';
        return;
    }
    switch (f.kind) {
        case Formula::Kind::True: out += "true"; break;
        case Formula::Kind::False: out += "false"; break;
        case Formula::Kind::Eq:
            render_term(f.terms[0], 0, out);
            out += " = ";
            render_term(f.terms[1], 0, out);
            break;
        case Formula::Kind::Pred:
            out += f.name;
            out += '(';
            for (std::size_t i = 0; i < f.terms.size(); ++i) {
                if (i) out += ", ";
                render_term(f.terms[i], 0, out);
            }
            out += ')';
            break;
        case Formula::Kind::Not: {
            out += '~';
            const Formula& g = f.subs[0];
            bool bare = g.kind == Formula::Kind::Not || g.kind == Formula::Kind::Pred ||
                        g.kind == Formula::Kind::True || g.kind == Formula::Kind::False;
            render_formula(g, bare ? 0 : 5, out);
            break;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            const char* sep = f.kind == Formula::Kind::And ? " & " : " | ";
            const int lvl = f.kind == Formula::Kind::And ? 4 : 3;
            for (std::size_t i = 0; i < f.subs.size(); ++i) {
                if (i) out += sep;
                render_formula(f.subs[i], lvl, out);
            }
            break;
        }
        case Formula::Kind::Implies:
            render_formula(f.subs[0], 2, out);
            out += " -> ";
            render_formula(f.subs[1], 0, out);
            break;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            out += f.kind == Formula::Kind::Forall ? "forall " : "exists ";
            join_vars(f.vars, out);
            out += ". ";
            render_formula(f.subs[0], 0, out);
            break;
        case Formula::Kind::Uncountably:
            out += "(Q " + f.vars[0] + ") ";
            render_formula(f.subs[0], 0, out);
            break;
        case Formula::Kind::ForallIn:
        case Formula::Kind::ExistsIn:
            out += f.kind == Formula::Kind::ForallIn ? "forall (" : "exists (";
            join_vars(f.vars, out);
            out += ") in ";
            out += f.domain == Domain::Z ? "Z^" : "Q^";
            out += std::to_string(f.vars.size());
            if (f.nonzero) out += "\\0";
            out += ". ";
            render_formula(f.subs[0], 0, out);
            break;
    }
}

}  // namespace

std::string render(const Term& t) {
    std::string out;
    render_term(t, 0, out);
    return out;
}

std::string render(const Formula& f) {
    std::string out;
    render_formula(f, 0, out);
    return out;
}

// ------------------------------------------------------------------ parsing

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        std::size_t i = 0;
        while (true) {
            while (i < s_.size() && std::isspace(static_cast<unsigned char>(s_[i]))) ++i;
            if (i == s_.size()) {
                out.push_back({Tok::End, "", i});
                return out;
            }
            const unsigned char c = static_cast<unsigned char>(s_[i]);
            const std::size_t start = i;
            if (std::isalpha(c) || c == '_') {
                while (i < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i])) || s_[i] == '_')) ++i;
                out.push_back({Tok::Ident, std::string(s_.substr(start, i - start)), start});
            } else if (std::isdigit(c)) {
                while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
                if (i + 1 < s_.size() && s_[i] == '/' && std::isdigit(static_cast<unsigned char>(s_[i + 1]))) {
                    ++i;
                    while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
                }
                out.push_back({Tok::Number, std::string(s_.substr(start, i - start)), start});
            } else if (s_.substr(i, 2) == "->") {
                out.push_back({Tok::Sym, "->", start});
                i += 2;
            } else if (s_.substr(i, 2) == "\\0") {
                out.push_back({Tok::Sym, "\\0", start});
                i += 2;
            } else if (std::string_view("()=+-*^~&|,.").find(static_cast<char>(c)) != std::string_view::npos) {
                out.push_back({Tok::Sym, std::string(1, static_cast<char>(c)), start});
                ++i;
            } else {
                throw error_at(start, "unexpected character");
            }
        }
    }

    ParseError error_at(std::size_t offset, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k < offset && k < s_.size(); ++k) {
            if (s_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return ParseError(msg, line, col);
    }

private:
    std::string_view s_;
};

bool is_keyword(const std::string& s) {
    return s == "forall" || s == "exists" || s == "in" || s == "true" || s == "false" || s == "exp";
}

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : lexer_(text), toks_(lexer_.run()) {}

    Formula parse_all_formula() {
        Formula f = formula();
        expect_end();
        return f;
    }

    Term parse_all_term() {
        Term t = term();
        expect_end();
        return t;
    }

private:
    const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }

    bool is_sym(const char* s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Sym && peek(k).text == s;
    }

    bool is_ident(const char* s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == s;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw lexer_.error_at(t.offset, t.kind == Tok::End ? msg + " (unexpected end of input)"
                                                           : msg + " (found '" + t.text + "')");
    }

    void expect_sym(const char* s) {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        ++pos_;
    }

    void expect_end() {
        if (peek().kind != Tok::End) fail("unexpected trailing input");
    }

    std::string variable() {
        if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("expected a variable");
        return toks_[pos_++].text;
    }

    std::vector<std::string> variable_list() {
        std::vector<std::string> vars{variable()};
        while (is_sym(",")) {
            ++pos_;
            vars.push_back(variable());
        }
        return vars;
    }

    bool at_quantifier() const {
        if (is_ident("forall") || is_ident("exists")) return true;
        return is_sym("(") && is_ident("Q", 1) && peek(2).kind == Tok::Ident && is_sym(")", 3);
    }

    Formula formula() {
        if (at_quantifier()) return quantified();
        return implication();
    }

    Formula quantified() {
        if (is_sym("(")) {
            pos_ += 2;
            std::string v = variable();
            expect_sym(")");
            return Formula::uncountably(std::move(v), formula());
        }
        const bool universal = peek().text == "forall";
        ++pos_;
        if (is_sym("(")) {
            ++pos_;
            auto vars = variable_list();
            expect_sym(")");
            if (!is_ident("in")) fail("expected 'in'");
            ++pos_;
            Domain d;
            if (is_ident("Z")) d = Domain::Z;
            else if (is_ident("Q")) d = Domain::Q;
            else fail("expected Z or Q");
            ++pos_;
            expect_sym("^");
            if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos)
                fail("expected a tuple length");
            if (std::stoul(peek().text) != vars.size()) fail("tuple length does not match the variables");
            ++pos_;
            bool nonzero = false;
            if (is_sym("\\0")) {
                nonzero = true;
                ++pos_;
            }
            expect_sym(".");
            Formula body = formula();
            return universal ? Formula::forall_in(std::move(vars), d, nonzero, std::move(body))
                             : Formula::exists_in(std::move(vars), d, nonzero, std::move(body));
        }
        auto vars = variable_list();
        expect_sym(".");
        Formula body = formula();
        return universal ? Formula::forall(std::move(vars), std::move(body))
                         : Formula::exists(std::move(vars), std::move(body));
    }

    Formula implication() {
        Formula lhs = disjunction();
        if (!is_sym("->")) return lhs;
        ++pos_;
        return Formula::implies(std::move(lhs), formula());
    }

    Formula disjunction() {
        std::vector<Formula> parts{conjunction()};
        while (is_sym("|")) {
            ++pos_;
            parts.push_back(conjunction());
        }
        return Formula::disj(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{unary()};
        while (is_sym("&")) {
            ++pos_;
            parts.push_back(unary());
        }
        return Formula::conj(std::move(parts));
    }

    Formula unary() {
        if (is_sym("~")) {
            ++pos_;
            return Formula::negation(unary());
        }
        if (is_ident("true")) {
            ++pos_;
            return Formula::truth();
        }
        if (is_ident("false")) {
            ++pos_;
            return Formula::falsity();
        }
        if (peek().kind == Tok::Ident && std::isupper(static_cast<unsigned char>(peek().text[0])) && is_sym("(", 1)) {
            std::string name = toks_[pos_].text;
            pos_ += 2;
            std::vector<Term> args;
            if (!is_sym(")")) {
                args.push_back(term());
                while (is_sym(",")) {
                    ++pos_;
                    args.push_back(term());
                }
            }
            expect_sym(")");
            return Formula::pred(std::move(name), std::move(args));
        }
        if (is_sym("(")) {
            // Either a parenthesized formula or the start of an equation's left term.
            const std::size_t save = pos_;
            std::optional<Formula> inner;
            try {
                ++pos_;
                inner = formula();
                expect_sym(")");
            } catch (const ParseError&) {
                inner.reset();
            }
            if (inner && !(is_sym("=") || is_sym("+") || is_sym("-") || is_sym("*") || is_sym("^")))
                return std::move(*inner);
            pos_ = save;
        }
        if (at_quantifier()) fail("quantifier must be parenthesized here");
        Term lhs = term();
        expect_sym("=");
        return Formula::eq(std::move(lhs), term());
    }

    Term term() {
        Term acc = product();
        while (is_sym("+") || is_sym("-")) {
            const bool plus = is_sym("+");
            ++pos_;
            Term rhs = product();
            acc = plus ? Term::add(std::move(acc), std::move(rhs)) : Term::sub(std::move(acc), std::move(rhs));
        }
        return acc;
    }

    Term product() {
        Term acc = negation();
        while (is_sym("*")) {
            ++pos_;
            acc = Term::mul(std::move(acc), negation());
        }
        return acc;
    }

    Term negation() {
        if (!is_sym("-")) return power();
        ++pos_;
        if (peek().kind == Tok::Number && !is_sym("^", 1)) return Term::num(-Rational::parse(toks_[pos_++].text));
        return Term::neg(negation());
    }

    Term power() {
        Term base = atom();
        if (!is_sym("^")) return base;
        ++pos_;
        if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos) fail("expected a natural exponent");
        unsigned k = static_cast<unsigned>(std::stoul(toks_[pos_++].text));
        return Term::pow(std::move(base), k);
    }

    Term atom() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            ++pos_;
            return Term::num(Rational::parse(t.text));
        }
        if (is_ident("exp") && is_sym("(", 1)) {
            pos_ += 2;
            Term inner = term();
            expect_sym(")");
            return Term::exp(std::move(inner));
        }
        if (is_sym("(")) {
            ++pos_;
            Term inner = term();
            expect_sym(")");
            return inner;
        }
        return Term::var(variable());
    }

    Lexer lexer_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

void term_vars(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::Var) out.insert(t.name);
    for (const auto& a : t.args) term_vars(a, out);
}

}  // namespace

Term parse_term(std::string_view text) { return FormulaParser(text).parse_all_term(); }

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_all_formula(); }

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> out;
    for (const auto& t : f.terms) term_vars(t, out);
    for (const auto& g : f.subs) {
        auto inner = free_variables(g);
        out.insert(inner.begin(), inner.end());
    }
    for (const auto& v : f.vars) out.erase(v);
    return out;
}

}  // namespace expfield
