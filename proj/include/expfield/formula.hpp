#pragma once

// First-order / L(Q) formula AST over exponential-polynomial terms, with an
// ASCII renderer and a parser for the same syntax.
//
//   formula  := quant | implies
//   quant    := ("forall" | "exists") idents "." formula
//             | ("forall" | "exists") "(" idents ")" "in" ("Z" | "Q") "^" nat ["\0"] "." formula
//             | "(" "Q" ident ")" formula
//   implies  := or ["->" (implies | quant)]
//   or       := and {"|" and}
//   and      := unary {"&" unary}
//   unary    := "~" unary | "true" | "false" | Pred "(" [terms] ")" | "(" formula ")" | term "=" term
//   term     := prod {("+" | "-") prod}
//   prod     := neg {"*" neg}
//   neg      := "-" neg | power
//   power    := atom ["^" nat]
//   atom     := number | ident | "exp" "(" term ")" | "(" term ")"
//
// Predicates start with an uppercase letter; numbers are a or a/b.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "expfield/arith.hpp"

namespace expfield {

struct Term {
    enum class Kind { Num, Var, Add, Sub, Neg, Mul, Pow, Exp };

    Kind kind = Kind::Num;
    Rational value;          // Num
    std::string name;        // Var
    unsigned exponent = 0;   // Pow
    std::vector<Term> args;  // operands

    static Term num(const Rational& r);
    static Term var(std::string name);
    static Term add(Term a, Term b);
    static Term sub(Term a, Term b);
    static Term neg(Term a);
    static Term mul(Term a, Term b);
    static Term pow(Term a, unsigned k);
    static Term exp(Term a);

    friend bool operator==(const Term& a, const Term& b);
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
};

enum class Domain { Z, Q };

struct Formula {
    enum class Kind {
        True,
        False,
        Eq,
        Pred,
        Not,
        And,
        Or,
        Implies,
        Forall,
        Exists,
        Uncountably,  ///< (Q x) φ: there are uncountably many x with φ
        ForallIn,     ///< bounded quantifier over Z^k or Q^k
        ExistsIn,
    };

    Kind kind = Kind::True;
    std::string name;               // Pred
    std::vector<Term> terms;        // Eq (2), Pred arguments
    std::vector<Formula> subs;      // connective operands, quantifier body
    std::vector<std::string> vars;  // bound variables
    Domain domain = Domain::Z;      // ForallIn / ExistsIn
    bool nonzero = false;           // ForallIn / ExistsIn: tuple ranges over D^k \ {0}

    static Formula truth();
    static Formula falsity();
    static Formula eq(Term a, Term b);
    static Formula pred(std::string name, std::vector<Term> args);
    static Formula negation(Formula f);
    /// n-ary; a single operand is returned unchanged, none gives true.
    static Formula conj(std::vector<Formula> fs);
    /// n-ary; a single operand is returned unchanged, none gives false.
    static Formula disj(std::vector<Formula> fs);
    static Formula implies(Formula a, Formula b);
    /// No variables returns the body unchanged.
    static Formula forall(std::vector<std::string> vars, Formula body);
    static Formula exists(std::vector<std::string> vars, Formula body);
    static Formula uncountably(std::string var, Formula body);
    static Formula forall_in(std::vector<std::string> vars, Domain d, bool nonzero, Formula body);
    static Formula exists_in(std::vector<std::string> vars, Domain d, bool nonzero, Formula body);

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
};

std::string render(const Term& t);
std::string render(const Formula& f);

Term parse_term(std::string_view text);
/// Throws ParseError with 1-based line and column.
Formula parse_formula(std::string_view text);

std::set<std::string> free_variables(const Formula& f);

}  // namespace expfield
