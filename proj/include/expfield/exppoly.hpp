#pragma once

// Exponential polynomials f(X) = p(X, e^X), the exponential derivation,
// Khovanskii systems and their first-order rendering.

#include <string>
#include <vector>

#include "expfield/formula.hpp"
#include "expfield/poly.hpp"

namespace expfield {

class EFieldPresentation;

/// p over a ring whose first n geometric variables are X1..Xn and next n are
/// Y1..Yn, with Yi standing for exp(Xi). Parameters are coefficients.
class ExpPoly {
public:
    ExpPoly(std::size_t arity, MultiPoly p);

    std::size_t arity() const { return arity_; }
    const MultiPoly& poly() const { return p_; }
    const RingPtr& ring() const { return p_.ring(); }

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator*(const Rational& c, const ExpPoly& a);
    friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.arity_ == b.arity_ && a.p_ == b.p_; }

    /// Rendering with Yi printed as exp(Xi).
    Term to_term() const;
    std::string to_string() const;

private:
    std::size_t arity_;
    MultiPoly p_;
};

/// Term for p with ring variable i rendered as var_terms[i]; terms in
/// descending grevlex order, coefficient first.
Term poly_to_term(const MultiPoly& p, const std::vector<Term>& var_terms);

/// Ring x1..xn, y1..yn followed by the given parameters.
RingPtr exp_ring(std::size_t n, const std::vector<std::string>& params = {});

/// Parses text such as "x1*exp(x1) - z1" over `ring` (built by exp_ring or compatible).
ExpPoly parse_exppoly(std::string_view text, std::size_t arity, const RingPtr& ring);

/// D_i f = dp/dX_i + Y_i * dp/dY_i, with i 1-based.
ExpPoly exp_derivative(const ExpPoly& f, std::size_t i);

class KhovanskiiSystem {
public:
    std::size_t width() const { return equations_.size(); }
    const std::vector<ExpPoly>& equations() const { return equations_; }
    const ExpPoly& jacobian() const { return jacobian_; }

private:
    friend KhovanskiiSystem khovanskii_system(const std::vector<ExpPoly>& fs);
    KhovanskiiSystem(std::vector<ExpPoly> eqs, ExpPoly jac) : equations_(std::move(eqs)), jacobian_(std::move(jac)) {}
    std::vector<ExpPoly> equations_;
    ExpPoly jacobian_;
};

/// Determinant of the matrix (D_j f_i) by cofactor expansion.
ExpPoly jacobian_determinant(const std::vector<ExpPoly>& fs);

/// Throws DomainError unless there are n polynomials of arity n over one ring.
KhovanskiiSystem khovanskii_system(const std::vector<ExpPoly>& fs);

/// The equations f_i = 0 together with ~(J = 0).
Formula chi_formula(const std::vector<ExpPoly>& fs);

enum class WitnessVerdict { Witness, EquationsFail, JacobianVanishes };
std::string to_string(WitnessVerdict v);

/// Points are rational vectors over the presentation basis. System parameters
/// must be parameters of the presentation's locus, shared by name. Equality and
/// vanishing are decided modulo the locus ideal (generic-point semantics).
WitnessVerdict verify_witness(const KhovanskiiSystem& sys, const EFieldPresentation& F,
                              const std::vector<std::vector<Rational>>& point,
                              std::size_t budget = kDefaultBudget);

}  // namespace expfield
