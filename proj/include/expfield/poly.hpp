#pragma once

// Sparse multivariate polynomials over Q with named transcendental parameters,
// Buchberger Gröbner bases, normal forms, elimination and dimension.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expfield/arith.hpp"

namespace expfield {

enum class VarKind { Geometric, Parameter };

struct VarName {
    std::string name;
    VarKind kind = VarKind::Geometric;
    friend bool operator==(const VarName&, const VarName&) = default;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Ordered variable context. Geometric variables always precede parameters.
class Ring {
public:
    static RingPtr from_vars(std::vector<VarName> vars);
    static RingPtr make(const std::vector<std::string>& geometric, const std::vector<std::string>& params = {});

    std::size_t size() const { return vars_.size(); }
    std::size_t num_geometric() const { return num_geometric_; }
    std::size_t num_params() const { return vars_.size() - num_geometric_; }
    const std::string& name(std::size_t i) const { return vars_[i].name; }
    VarKind kind(std::size_t i) const { return vars_[i].kind; }
    bool is_param(std::size_t i) const { return vars_[i].kind == VarKind::Parameter; }
    const std::vector<VarName>& vars() const { return vars_; }
    std::optional<std::size_t> index_of(const std::string& name) const;
    std::size_t require(const std::string& name) const;
    std::vector<std::string> param_names() const;
    std::vector<std::string> geometric_names() const;

    friend bool operator==(const Ring& a, const Ring& b) { return a.vars_ == b.vars_; }

private:
    std::vector<VarName> vars_;
    std::size_t num_geometric_ = 0;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

using Exponents = std::vector<std::uint32_t>;

class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational>;

    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
    MultiPoly(RingPtr ring, TermMap terms);

    static MultiPoly constant(RingPtr ring, const Rational& c);
    static MultiPoly variable(RingPtr ring, std::size_t index);
    static MultiPoly variable(RingPtr ring, const std::string& name);
    static MultiPoly monomial(RingPtr ring, Exponents e, const Rational& c = Rational(1));

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    /// No geometric variable and no parameter occurs.
    bool is_constant() const;
    /// No geometric variable occurs (parameters allowed).
    bool is_parameter_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Exponents& e) const;
    bool involves(std::size_t var) const;
    std::uint32_t degree_in(std::size_t var) const;
    std::uint32_t total_degree() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    MultiPoly pow(unsigned k) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Canonical text, terms in descending graded-reverse-lex order, e.g. "3/2*x1^2*y3 - p*x2 + 1".
    std::string to_string() const;

private:
    RingPtr ring_;
    TermMap terms_;
};

/// Same polynomial over another ring; every variable that occurs must exist there by name.
MultiPoly embed(const MultiPoly& f, const RingPtr& target);

/// Replaces variable i of f's ring by images[i] (all images share one target ring).
MultiPoly substitute(const MultiPoly& f, const RingPtr& target, const std::vector<MultiPoly>& images);

MultiPoly partial_derivative(const MultiPoly& f, const std::string& var);
MultiPoly partial_derivative(const MultiPoly& f, std::size_t var);

/// Every order is a block order whose last block holds the parameters.
class MonomialOrder {
public:
    enum class Kind { Grevlex, Lex, Elimination };

    static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, {}); }
    static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
    /// Variables in `block` are greater than every other monomial (grevlex inside blocks).
    static MonomialOrder elimination(std::vector<std::string> block) {
        return MonomialOrder(Kind::Elimination, std::move(block));
    }

    Kind kind() const { return kind_; }
    const std::vector<std::string>& block() const { return block_; }
    std::string to_string() const;

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    MonomialOrder(Kind k, std::vector<std::string> block) : kind_(k), block_(std::move(block)) {}
    Kind kind_;
    std::vector<std::string> block_;
};

/// Order resolved against a concrete ring.
class MonomialComparator {
public:
    MonomialComparator(const RingPtr& ring, const MonomialOrder& order);
    /// <0, 0, >0 as a is smaller, equal, greater than b.
    int compare(const Exponents& a, const Exponents& b) const;
    bool greater(const Exponents& a, const Exponents& b) const { return compare(a, b) > 0; }

private:
    std::vector<std::vector<std::size_t>> blocks_;
};

constexpr std::size_t kDefaultBudget = 1'000'000;

class GroebnerBasis {
public:
    GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<MultiPoly> gens);

    const RingPtr& ring() const { return ring_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<MultiPoly>& generators() const { return gens_; }
    const std::vector<Exponents>& leading_monomials() const { return leading_; }
    std::size_t size() const { return gens_.size(); }

    bool is_zero_ideal() const { return gens_.empty(); }
    bool is_unit() const;
    /// The ideal extended to Q(params)[x] is the unit ideal.
    bool is_empty_over_parameters() const;

    /// Membership over Q(params): f lies in the extended ideal.
    bool contains(const MultiPoly& f) const;

    /// Deterministic 64-bit digest of the canonical generator text.
    std::uint64_t digest() const;
    std::string to_string() const;

    friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b);

private:
    RingPtr ring_;
    MonomialOrder order_;
    std::vector<MultiPoly> gens_;
    std::vector<Exponents> leading_;
};

/// Reduced Gröbner basis (Buchberger with Gebauer–Möller pair criteria,
/// normal selection by least lcm degree). Throws BudgetExceeded.
GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const MonomialOrder& order,
                       std::size_t budget = kDefaultBudget);
GroebnerBasis groebner(const RingPtr& ring, const std::vector<MultiPoly>& gens, const MonomialOrder& order,
                       std::size_t budget = kDefaultBudget);

/// Fully reduced remainder of f modulo gb over Q[x, params].
MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb, std::size_t budget = kDefaultBudget);

struct PseudoRemainder {
    MultiPoly multiplier;  ///< nonzero, parameters only
    MultiPoly remainder;   ///< multiplier * f ≡ remainder, reduced over Q(params)
};

/// Normal form over the parameter field: remainder / multiplier is the unique
/// Q(params)-normal form of f.
PseudoRemainder pseudo_normal_form(const MultiPoly& f, const GroebnerBasis& gb,
                                   std::size_t budget = kDefaultBudget);

/// Reduced basis of ideal(gens) ∩ Q[kept variables, params], returned over the
/// ring without the dropped variables (grevlex).
GroebnerBasis eliminate(const std::vector<MultiPoly>& gens, const std::vector<std::string>& drop,
                        std::size_t budget = kDefaultBudget);

/// Krull dimension over Q(params); nullopt marks the empty variety.
std::optional<std::size_t> ideal_dimension(const GroebnerBasis& gb);

/// Size of a largest subset of the first `nvars` variables containing the support of no
/// monomial in `monomials`. Exposed for tests.
std::size_t max_independent_set(const std::vector<std::uint64_t>& supports, std::size_t nvars);

/// Parses the canonical text form, e.g. "3/2*x1^2*y3 - p*x2 + 1", over `ring`.
/// Grammar: sums and differences of products of powers of identifiers, rational
/// literals (a or a/b) and parenthesized expressions. Throws ParseError.
MultiPoly parse_polynomial(std::string_view text, const RingPtr& ring);

/// Ring keeping exactly the listed variables, in their original order.
RingPtr subring(const RingPtr& ring, const std::vector<std::string>& keep);

}  // namespace expfield
