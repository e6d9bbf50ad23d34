#include "doctest.h"

#include <random>

#include "expfield/formula.hpp"

using namespace expfield;

namespace {

Term random_term(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7), small(-3, 3), var(1, 3);
    switch (pick(rng)) {
        case 0: {
            int a = small(rng), b = std::uniform_int_distribution<int>(1, 3)(rng);
            return Term::num(Rational(Integer(a), Integer(b)));
        }
        case 1: return Term::var("x" + std::to_string(var(rng)));
        case 2: return Term::add(random_term(rng, depth - 1), random_term(rng, depth - 1));
        case 3: return Term::sub(random_term(rng, depth - 1), random_term(rng, depth - 1));
        case 4: return Term::neg(random_term(rng, depth - 1));
        case 5: return Term::mul(random_term(rng, depth - 1), random_term(rng, depth - 1));
        case 6: return Term::pow(random_term(rng, depth - 1), static_cast<unsigned>(var(rng)));
        default: return Term::exp(random_term(rng, depth - 1));
    }
}

Formula random_formula(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
    auto vars = [&] {
        std::vector<std::string> v{"x1"};
        if (rng() % 2) v.push_back("m2");
        return v;
    };
    switch (pick(rng)) {
        case 0: return Formula::eq(random_term(rng, 2), random_term(rng, 2));
        case 1: return rng() % 2 ? Formula::truth() : Formula::falsity();
        case 2: return Formula::pred("Rotund", {random_term(rng, 1)});
        case 3: return Formula::negation(random_formula(rng, depth - 1));
        case 4: return Formula::conj({random_formula(rng, depth - 1), random_formula(rng, depth - 1)});
        case 5: return Formula::disj({random_formula(rng, depth - 1), random_formula(rng, depth - 1),
                                      random_formula(rng, depth - 1)});
        case 6: return Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
        case 7: return Formula::forall(vars(), random_formula(rng, depth - 1));
        case 8: return Formula::exists(vars(), random_formula(rng, depth - 1));
        case 9: return Formula::uncountably("x2", random_formula(rng, depth - 1));
        case 10: return Formula::forall_in(vars(), Domain::Q, rng() % 2, random_formula(rng, depth - 1));
        default: return Formula::exists_in(vars(), Domain::Z, rng() % 2, random_formula(rng, depth - 1));
    }
}

}  // namespace

TEST_CASE("formula text round-trips") {
    const char* texts[] = {
        "forall x1. exp(x1) = 1 -> 2*x1 = 0",
        "(Q x1) x1 = x1",
        "forall z1. ~((Q x1) x1 - z1 = 0 & ~(1 = 0))",
        "forall x1. exists (m1) in Z^1\\0. exp(x1) - 1 = 0 -> m1*x1 = 0",
        "forall (m1, m2) in Q^2. m1*x1 + m2*x2 = 0 -> m1 = 0 & m2 = 0",
        "a = b | c = d & ~Rotund(p)",
        "-2*x1 + 3/2*x2^2 - -1 = (x1 + 1)*x2",
        "-(2) = -2^2",
    };
    for (const char* t : texts) {
        Formula f = parse_formula(t);
        CHECK(render(f) == t);
        CHECK(parse_formula(render(f)) == f);
    }
}

TEST_CASE("formula parse structure") {
    Formula q = parse_formula("(Q x1) x1 = x1");
    CHECK(q.kind == Formula::Kind::Uncountably);
    CHECK(q.vars == std::vector<std::string>{"x1"});

    Formula imp = parse_formula("a = 0 -> b = 0 -> c = 0");
    CHECK(imp.kind == Formula::Kind::Implies);
    CHECK(imp.subs[1].kind == Formula::Kind::Implies);

    Formula paren = parse_formula("(x1 + 1)*x2 = 0");
    CHECK(paren.kind == Formula::Kind::Eq);

    CHECK(parse_term("-3") == Term::num(Rational(-3)));
    CHECK(parse_term("-x") == Term::neg(Term::var("x")));
}

TEST_CASE("formula syntax errors carry positions") {
    try {
        parse_formula("∃");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 1);
    }
    try {
        parse_formula("x1 = 0 &\n  & y = 1");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_formula("forall (m1, m2) in Z^3. m1 = 0"), ParseError);
    CHECK_THROWS_AS(parse_formula("x1 = 0 & forall x2. x2 = 0"), ParseError);
}

TEST_CASE("free variables") {
    auto f = parse_formula("forall x1. exists (m1) in Z^1\\0. m1*x1 = z");
    CHECK(free_variables(f) == std::set<std::string>{"z"});
    CHECK(free_variables(parse_formula("(Q x1) x1 = x2")) == std::set<std::string>{"x2"});
}

TEST_CASE("random formulas round-trip through text") {
    std::mt19937 rng(41);
    for (int t = 0; t < 500; ++t) {
        Formula f = random_formula(rng, 4);
        std::string text = render(f);
        Formula back = parse_formula(text);
        CHECK_MESSAGE(back == f, text);
        CHECK(render(back) == text);
    }
}
