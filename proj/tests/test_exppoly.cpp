#include "doctest.h"

#include <random>

#include "expfield/exppoly.hpp"
#include "expfield/presentation.hpp"

using namespace expfield;

namespace {

ExpPoly E(const std::string& text, std::size_t n = 1, const std::vector<std::string>& params = {}) {
    return parse_exppoly(text, n, exp_ring(n, params));
}

ExpPoly random_exppoly(std::mt19937& rng, const RingPtr& ring, std::size_t n) {
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), count(1, 4);
    MultiPoly p(ring);
    for (int t = count(rng); t > 0; --t) {
        Exponents e(ring->size(), 0);
        for (std::size_t i = 0; i < 2 * n; ++i) e[i] = static_cast<std::uint32_t>(deg(rng) == 2 ? deg(rng) : 0);
        p += MultiPoly::monomial(ring, e, Rational(coef(rng)));
    }
    return ExpPoly(n, p);
}

// Direct evaluation of an exp-free polynomial at a rational point.
Rational eval(const MultiPoly& p, const std::vector<Rational>& x) {
    Rational total(0);
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::uint32_t k = 0; k < e[i]; ++k) t *= x[i];
        total += t;
    }
    return total;
}

// Partial derivative evaluated term by term.
Rational eval_partial(const MultiPoly& p, std::size_t var, const std::vector<Rational>& x) {
    Rational total(0);
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Rational t = c * Rational(static_cast<long>(e[var]));
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::uint32_t k = e[i] - (i == var ? 1 : 0);
            for (std::uint32_t j = 0; j < k; ++j) t *= x[i];
        }
        total += t;
    }
    return total;
}

}  // namespace

TEST_CASE("derivative examples") {
    CHECK(exp_derivative(E("exp(x1)"), 1) == E("exp(x1)"));
    CHECK(exp_derivative(E("x1"), 1) == E("1"));
    CHECK(exp_derivative(E("x1*exp(x1)"), 1) == E("exp(x1) + x1*exp(x1)"));
    CHECK(exp_derivative(E("exp(2*x1)"), 1) == E("2*exp(x1)^2"));
    CHECK(exp_derivative(E("exp(x1 + x2)*x2", 2), 1) == E("exp(x1)*exp(x2)*x2", 2));
    CHECK_THROWS_AS(exp_derivative(E("x1"), 0), DomainError);
    CHECK_THROWS_AS(exp_derivative(E("x1"), 2), DomainError);
}

TEST_CASE("parsing and rendering") {
    CHECK(E("exp(x1) - z1", 1, {"z1"}).to_string() == "exp(x1) - z1");
    CHECK(E("x1^2*exp(x1)^3 - 1/2").to_string() == "x1^2*exp(x1)^3 - 1/2");
    CHECK_THROWS_AS(E("exp(x1^2)"), DomainError);
    CHECK_THROWS_AS(E("exp(-x1)"), DomainError);
    CHECK_THROWS_AS(E("exp(z1)", 1, {"z1"}), DomainError);
    CHECK_THROWS_AS(E("exp(exp(x1))"), DomainError);
    CHECK_THROWS_AS(ExpPoly(2, MultiPoly(exp_ring(1, {}))), DomainError);

    std::mt19937 rng(7);
    RingPtr r = exp_ring(2, {"z"});
    for (int i = 0; i < 200; ++i) {
        ExpPoly f = random_exppoly(rng, r, 2);
        CHECK(parse_exppoly(f.to_string(), 2, r) == f);
    }
}

TEST_CASE("derivative laws") {
    std::mt19937 rng(11);
    RingPtr r = exp_ring(2, {});
    for (int t = 0; t < 150; ++t) {
        ExpPoly f = random_exppoly(rng, r, 2), g = random_exppoly(rng, r, 2);
        Rational c(std::uniform_int_distribution<int>(-5, 5)(rng));
        for (std::size_t i = 1; i <= 2; ++i) {
            CHECK(exp_derivative(f + g, i) == exp_derivative(f, i) + exp_derivative(g, i));
            CHECK(exp_derivative(c * f, i) == c * exp_derivative(f, i));
            CHECK(exp_derivative(f * g, i) == exp_derivative(f, i) * g + f * exp_derivative(g, i));
        }
        CHECK(exp_derivative(exp_derivative(f, 1), 2) == exp_derivative(exp_derivative(f, 2), 1));
    }
}

TEST_CASE("khovanskii systems") {
    CHECK(khovanskii_system({E("x1")}).jacobian() == E("1"));
    CHECK(khovanskii_system({E("exp(x1) - x1")}).jacobian() == E("exp(x1) - 1"));
    CHECK(khovanskii_system({E("x1", 2), E("x2", 2)}).jacobian() == E("1", 2));
    CHECK(khovanskii_system({E("x2", 2), E("x1", 2)}).jacobian() == E("-1", 2));
    CHECK_THROWS_AS(khovanskii_system({E("x1", 2)}), DomainError);
    CHECK_THROWS_AS(khovanskii_system({E("x1"), E("x1", 2)}), DomainError);
    CHECK_THROWS_AS(khovanskii_system({}), DomainError);

    std::mt19937 rng(3);
    RingPtr r = exp_ring(2, {});
    for (int t = 0; t < 50; ++t) {
        ExpPoly f = random_exppoly(rng, r, 2), g = random_exppoly(rng, r, 2);
        auto sys = khovanskii_system({f, g});
        CHECK(sys.width() == 2);
        ExpPoly det = exp_derivative(f, 1) * exp_derivative(g, 2) - exp_derivative(f, 2) * exp_derivative(g, 1);
        CHECK(sys.jacobian() == det);
        CHECK(jacobian_determinant({f, g}) == sys.jacobian());
    }
}

TEST_CASE("chi formulas") {
    CHECK(render(chi_formula({E("x1")})) == "x1 = 0 & ~(1 = 0)");
    CHECK(render(chi_formula({E("exp(x1) - z1", 1, {"z1"})})) == "exp(x1) - z1 = 0 & ~(exp(x1) = 0)");
    CHECK(render(chi_formula({E("x1", 2), E("x2", 2)})) == "x1 = 0 & x2 = 0 & ~(1 = 0)");
    auto fv = free_variables(chi_formula({E("exp(x1) - z1", 1, {"z1"})}));
    CHECK(fv == std::set<std::string>{"x1", "z1"});
    CHECK(parse_formula(render(chi_formula({E("x1*exp(x1) - 2")}))) == chi_formula({E("x1*exp(x1) - 2")}));
}

TEST_CASE("witness verification examples") {
    auto pair = EFieldPresentation::generic({"b"});
    auto ker = EFieldPresentation::with_kernel();
    for (const auto& F : {pair, ker}) {
        CHECK(verify_witness(khovanskii_system({E("x1")}), F, {{Rational(0)}}) == WitnessVerdict::Witness);
        CHECK(verify_witness(khovanskii_system({E("x1^2")}), F, {{Rational(0)}}) == WitnessVerdict::JacobianVanishes);
    }
    CHECK(verify_witness(khovanskii_system({E("exp(x1) - 1")}), ker, {{Rational(1)}}) == WitnessVerdict::Witness);
    CHECK(verify_witness(khovanskii_system({E("exp(x1) - 1")}), pair, {{Rational(1)}}) ==
          WitnessVerdict::EquationsFail);
    CHECK(verify_witness(khovanskii_system({E("exp(x1) - 1")}), ker, {{Rational(2)}}) == WitnessVerdict::Witness);
    CHECK_THROWS_AS(verify_witness(khovanskii_system({E("exp(x1) - 1")}), ker, {{Rational(1, 2)}}), DomainError);
    CHECK_THROWS_AS(verify_witness(khovanskii_system({E("x1")}), ker, {{Rational(1), Rational(0)}}), DomainError);
    CHECK_THROWS_AS(verify_witness(khovanskii_system({E("x1 - z", 1, {"z"})}), ker, {{Rational(1)}}), DomainError);

    // Fixed point a = exp(a): a solves exp(x) - x = 0 with Jacobian exp(a) - 1 = a - 1, nonzero.
    auto fixed = extend_by_variety(ker, GVariety::parse(1, {"x1 - y1"}), {"a"}, Bounds{}).presentation;
    CHECK(verify_witness(khovanskii_system({E("exp(x1) - x1")}), fixed, {{Rational(0), Rational(1)}}) ==
          WitnessVerdict::Witness);
    CHECK(verify_witness(khovanskii_system({E("exp(x1) - x1")}), fixed, {{Rational(1), Rational(1)}}) ==
          WitnessVerdict::EquationsFail);
}

TEST_CASE("exp-free systems agree with direct evaluation") {
    // Basis {b} with b = 1, so the element q*b is the rational q.
    auto one = EFieldPresentation({"b"}, GVariety::parse(1, {"x1 - 1"}));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> small(-2, 2), coef(-3, 3), deg(0, 2);
    RingPtr r = exp_ring(2, {});
    auto x1 = MultiPoly::variable(r, 0), x2 = MultiPoly::variable(r, 1);
    auto random_xpoly = [&] {
        MultiPoly p(r);
        for (int t = 0; t < 3; ++t) {
            Exponents e(r->size(), 0);
            e[0] = static_cast<std::uint32_t>(deg(rng));
            e[1] = static_cast<std::uint32_t>(deg(rng));
            p += MultiPoly::monomial(r, e, Rational(coef(rng)));
        }
        return p;
    };
    int witnesses = 0, vanishing = 0, failing = 0;
    for (int t = 0; t < 120; ++t) {
        std::vector<Rational> q{Rational(small(rng), 1 + (t % 3)), Rational(small(rng))};
        MultiPoly c1 = x1 - MultiPoly::constant(r, q[0]), c2 = x2 - MultiPoly::constant(r, q[1]);
        MultiPoly f1 = c1 * random_xpoly() + c2 * random_xpoly();
        MultiPoly f2 = c1 * random_xpoly() + c2 * random_xpoly();
        if (t % 4 == 0) f2 += MultiPoly::constant(r, Rational(1));
        auto sys = khovanskii_system({ExpPoly(2, f1), ExpPoly(2, f2)});

        WitnessVerdict expected;
        if (!eval(f1, q).is_zero() || !eval(f2, q).is_zero()) {
            expected = WitnessVerdict::EquationsFail;
            ++failing;
        } else {
            Rational j = eval_partial(f1, 0, q) * eval_partial(f2, 1, q) - eval_partial(f1, 1, q) * eval_partial(f2, 0, q);
            expected = j.is_zero() ? WitnessVerdict::JacobianVanishes : WitnessVerdict::Witness;
            ++(j.is_zero() ? vanishing : witnesses);
        }
        CHECK(verify_witness(sys, one, {{q[0]}, {q[1]}}) == expected);
    }
    CHECK(witnesses > 0);
    CHECK(vanishing > 0);
    CHECK(failing > 0);
}
