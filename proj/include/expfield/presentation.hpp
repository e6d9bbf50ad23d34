#pragma once

// Finitely presented partial exponential fields: a Q-linearly independent
// basis b, optionally a kernel generator tau with exp(tau) = 1, and the locus
// of (b, exp(b)) as a subvariety of G^n.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "expfield/geometry.hpp"

namespace expfield {

class EFieldPresentation {
public:
    /// locus lives in G^n with n = basis.size(); coordinate i belongs to basis[i].
    EFieldPresentation(std::vector<std::string> basis, GVariety locus,
                       std::optional<std::size_t> kernel = std::nullopt);

    /// Basis {tau}, locus exp(tau) = 1.
    static EFieldPresentation with_kernel(const std::string& tau = "tau");
    /// Basis symbols with no relations.
    static EFieldPresentation generic(const std::vector<std::string>& basis);

    std::size_t size() const { return basis_.size(); }
    const std::vector<std::string>& basis() const { return basis_; }
    const GVariety& locus() const { return locus_; }
    std::optional<std::size_t> kernel() const { return kernel_; }
    std::optional<std::string> kernel_symbol() const;
    std::size_t index_of(const std::string& symbol) const;

    /// Transcendence degree of (b, exp b) over Q(params).
    std::size_t td() const { return td_; }
    std::size_t ldim() const { return basis_.size(); }

    /// Coordinates of a Q-linear combination of basis symbols such as "2*b1 - b2/3".
    std::vector<Rational> parse_element(const std::string& text) const;
    std::string element_text(const std::vector<Rational>& coords) const;

private:
    std::vector<std::string> basis_;
    GVariety locus_;
    std::optional<std::size_t> kernel_;
    std::size_t td_;
};

/// Rows of coordinates over the basis; zero rows describe the trivial subfield.
RatMatrix element_matrix(const EFieldPresentation& F, const std::vector<std::vector<Rational>>& elements);

/// td(A b, exp(A b)) over Q(params); rows are scaled to integers first.
std::size_t td_of_span(const EFieldPresentation& F, const RatMatrix& a, std::size_t budget = kDefaultBudget);

/// delta(a / F0) = td(a, exp a / F0) - ldim_Q(a / D(F0)) with a the rows of `a`
/// and F0 spanned by the rows of `base` (possibly none).
long delta(const EFieldPresentation& F, const RatMatrix& a, const RatMatrix& base, std::size_t budget = kDefaultBudget);
long delta(const EFieldPresentation& F, const RatMatrix& a, std::size_t budget = kDefaultBudget);

struct SchanuelVerdict {
    bool holds = true;
    long delta = 0;
};

SchanuelVerdict schanuel_check(const EFieldPresentation& F, const RatMatrix& a, std::size_t budget = kDefaultBudget);

struct StrongResult {
    bool strong = true;
    std::size_t bound = 0;
    std::optional<RatMatrix> witness;  ///< rows of a tuple with delta(a / F0) < 0
    long witness_delta = 0;
    std::size_t tuples_checked = 0;
};

/// Searches tuples spanned by integer HNF matrices with entries bounded by `bound`,
/// one per span of (tuple, F0).
StrongResult is_strong_up_to(const EFieldPresentation& F, const RatMatrix& base, std::size_t bound,
                             std::size_t budget = kDefaultBudget);

struct HullResult {
    RatMatrix span;                ///< reduced row-echelon basis of the hull
    std::vector<RatMatrix> trace;  ///< witnesses adjoined, in order
    std::size_t bound = 0;
};

/// Requires some subset of the rows of b to be strong (up to the bound), then
/// adjoins negative-delta witnesses until none is found.
HullResult hull_up_to(const EFieldPresentation& F, const RatMatrix& b, std::size_t bound,
                      std::size_t budget = kDefaultBudget);

/// A failed precondition of the F|V construction, with its certificate.
class ExtensionRejected : public DomainError {
public:
    ExtensionRejected(const std::string& what, std::string condition) : DomainError(what), condition_(std::move(condition)) {}
    const std::string& condition() const { return condition_; }

    std::optional<FreenessCertificate> freeness;
    std::optional<RotundityReport> rotundity;
    std::optional<std::size_t> dimension;

private:
    std::string condition_;
};

struct ExtensionResult {
    EFieldPresentation presentation;
    std::vector<std::string> new_symbols;
    bool exponentially_algebraic = false;  ///< dim V = n
    std::size_t dim_v = 0;
    FreenessCertificate additive;
    FreenessCertificate multiplicative;
    RotundityReport rotundity;
    StrongResult base_strong;  ///< F inside F|V, rechecked up to the strong bound
};

/// F|V: adjoins a generic point (c, exp c) of V over F. V's parameters are
/// identified with the locus parameters of F by name.
ExtensionResult extend_by_variety(const EFieldPresentation& F, const GVariety& v, const std::vector<std::string>& symbols,
                                  const Bounds& bounds);

struct ExtensionDatum {
    EFieldPresentation base;
    GVariety v;
    std::vector<std::string> symbols;
};

struct IsomorphismResult {
    bool isomorphic = false;
    std::size_t m_max = 0;
    std::optional<std::pair<std::size_t, std::size_t>> m;  ///< divisors identifying the loci
};

/// Equal reduced bases of [m1]·V1 and [m2]·V2 for some m1, m2 <= m_max.
IsomorphismResult extensions_isomorphic(const ExtensionDatum& e1, const ExtensionDatum& e2, std::size_t m_max,
                                        std::size_t budget = kDefaultBudget);

struct IteratedConfig {
    EFieldPresentation presentation;
    GVariety variety;  ///< coordinates x0..xN, y0..yN
};

/// y_i = x_{i+1} for i < N and y_N = x_0: the orbit c, e(c), ..., e_N(c) with e_{N+1}(c) = c.
IteratedConfig iterated_exp_config(std::size_t n, std::size_t budget = kDefaultBudget);

}  // namespace expfield
