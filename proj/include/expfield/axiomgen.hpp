#pragma once

// Emitters for axiom-scheme instances and isolating formulas.

#include <string>
#include <vector>

#include "expfield/exppoly.hpp"
#include "expfield/formula.hpp"
#include "expfield/presentation.hpp"

namespace expfield {

/// forall x. exists m in Z^n \ 0. (x, exp x) in V -> sum m_i x_i = 0.
/// V must be parameter-free of dimension n - 1.
Formula schanuel_axiom_instance(const GVariety& v);

/// A predicate used as a placeholder inside an emitted scheme.
struct PredicateDefinition {
    std::string name;
    std::vector<std::string> args;
    std::string meaning;
    /// Explicit definition when one is available (quantifying over Z).
    std::optional<Formula> definition;
};

struct SeacInstance {
    Formula sentence;
    std::vector<PredicateDefinition> definitions;
};

/// forall p. [p in P'] -> forall a1..ar. exists x1..xn. forall m in Q^{n+r}.
///   (x, exp x) in V_p & (sum m_i x_i + sum m_{n+j} a_j = 0 -> m_1 = 0 & ... & m_n = 0)
/// with P' spelled out through placeholder predicates on the parameters.
SeacInstance seac_axiom_instance(const GVariety& family, std::size_t r);

/// forall z. ~((Q x1) exists x2..xn. chi_f(x, z)), z the coefficient parameters.
Formula ccp_axiom_instance(const std::vector<ExpPoly>& fs);

struct IsolatingInput {
    /// Elements a as coordinate rows over the basis of F.
    RatMatrix a;
    /// Basis symbols of F playing the role of X0; the kernel generator is added when present.
    std::vector<std::string> x0;
    /// Locus of y over X0 in G^r; parameters are named by basis symbols of X0 (or F's parameters).
    GVariety v;
    /// The witness tuple b as coordinate rows over the basis of F (r rows).
    RatMatrix b;
    /// a = M b, n x r.
    RatMatrix m;
};

/// exists y. (y, exp y) in V & y Q-independent over X0 & x = M y.
/// Free variables: x1..xn plus the X0 symbols.
Formula isolating_formula(const EFieldPresentation& F, const IsolatingInput& in,
                          std::size_t budget = kDefaultBudget);

}  // namespace expfield
