#pragma once

// Subvarieties of G^n = (Ga x Gm)^n: integer matrix actions, dimension,
// rotundity up to a matrix bound, additive and multiplicative freeness.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expfield/poly.hpp"

namespace expfield {

/// Ring with additive coordinates <add>1..<add>n, multiplicative coordinates
/// <mult>1..<mult>n and the given parameters.
RingPtr gn_ring(std::size_t n, const std::vector<std::string>& params = {}, const std::string& add = "x",
                const std::string& mult = "y");

/// V ⊆ G^n given by an ideal in a ring whose first n geometric variables are the
/// additive coordinates and next n the multiplicative ones. The stored ideal is
/// saturated by y1*...*yn, so reported generators avoid the inverse variables.
/// Irreducibility is assumed, never checked.
class GVariety {
public:
    GVariety(RingPtr ring, const std::vector<MultiPoly>& gens, std::size_t budget = kDefaultBudget);

    /// Parses each equation text ("lhs" or "lhs = rhs") over gn_ring(n, params).
    static GVariety parse(std::size_t n, const std::vector<std::string>& equations,
                          const std::vector<std::string>& params = {}, std::size_t budget = kDefaultBudget);

    std::size_t n() const { return n_; }
    const RingPtr& ring() const { return ring_; }
    /// Reduced grevlex basis of the saturated ideal.
    const GroebnerBasis& basis() const { return basis_; }
    const std::vector<MultiPoly>& generators() const { return basis_.generators(); }
    /// Generators as supplied, before saturation.
    const std::vector<MultiPoly>& input_generators() const { return input_; }
    bool has_parameters() const { return ring_->num_params() > 0; }
    bool irreducibility_assumed() const { return true; }

    /// Ring with inverse variables w_i (y_i*w_i = 1) inserted before the parameters.
    const RingPtr& laurent_ring() const { return laurent_ring_; }
    /// Reduced basis of the ideal with the inverse relations, eliminating w first.
    const GroebnerBasis& laurent_basis() const { return laurent_; }
    /// prod y_i^{m_i} with negative exponents through the inverse variables.
    MultiPoly laurent_monomial(const std::vector<Integer>& m) const;

    MultiPoly additive(std::size_t i) const { return MultiPoly::variable(ring_, i); }
    MultiPoly multiplicative(std::size_t i) const { return MultiPoly::variable(ring_, n_ + i); }

    /// Same ideal over another ring with the same layout (variables matched by position).
    GVariety rename(const RingPtr& target, std::size_t budget = kDefaultBudget) const;

    friend bool operator==(const GVariety& a, const GVariety& b) { return a.basis_ == b.basis_; }

private:
    std::size_t n_;
    RingPtr ring_;
    RingPtr laurent_ring_;
    std::vector<MultiPoly> input_;
    GroebnerBasis basis_;
    GroebnerBasis laurent_;
};

/// Zariski closure of the image of V under M (k x n): linear on the additive
/// part, monomial on the multiplicative part. The result lives in G^k; for a
/// square M it reuses V's coordinate names.
GVariety matrix_action(const IntMatrix& m, const GVariety& v, std::size_t budget = kDefaultBudget);

/// dim of the closure of M·V, without building the image variety.
std::size_t image_dimension(const IntMatrix& m, const GVariety& v, std::size_t budget = kDefaultBudget);

/// Krull dimension over the parameter field.
std::size_t dimension(const GVariety& v);

struct FreenessCertificate {
    enum class Kind { Additive, Multiplicative };
    enum class Verdict { Free, NotFree, FreeUpToBound };

    Kind kind = Kind::Additive;
    Verdict verdict = Verdict::Free;
    std::size_t bound = 0;  ///< 0 for the exact additive decision
    /// Present iff not free: primitive integer m with sum m_i x_i = a, resp. prod y_i^{m_i} = b.
    std::optional<std::vector<Integer>> m;
    /// The constant as numerator / denominator in Q[params].
    std::optional<MultiPoly> constant_num;
    std::optional<MultiPoly> constant_den;

    bool free() const { return verdict != Verdict::NotFree; }
    std::string constant_text() const;
};

std::string to_string(FreenessCertificate::Verdict v);

/// Exact: a nontrivial rational relation sum m_i x_i = a on V, a in Q(params).
FreenessCertificate is_additively_free(const GVariety& v, std::size_t budget = kDefaultBudget);

/// Tests every primitive m with |m_i| <= bound, one per sign class, by max-norm.
FreenessCertificate is_multiplicatively_free_up_to(const GVariety& v, std::size_t bound,
                                                    std::size_t budget = kDefaultBudget);

/// Rechecks a not-free certificate from its data alone.
bool recheck_freeness_witness(const GVariety& v, const FreenessCertificate& cert, std::size_t budget = kDefaultBudget);

struct RotundityReport {
    enum class Verdict { RotundUpTo, NotRotund };
    struct Counterexample {
        IntMatrix m;  ///< n x n, rows padded with zeros
        std::size_t image_dimension = 0;
        std::size_t rank = 0;
    };

    std::size_t bound = 0;
    Verdict verdict = Verdict::RotundUpTo;
    std::optional<Counterexample> counterexample;
    std::size_t matrices_checked = 0;
    /// Non-empty when the verdict followed from a coordinate projection being dominant.
    std::string shortcut;

    bool rotund() const { return verdict == Verdict::RotundUpTo; }
};

std::string to_string(RotundityReport::Verdict v);

/// Calls visit(M) on every k x n integer matrix in row Hermite normal form with
/// rank k, pivots at most `bound` and free entries in [-bound, bound], for
/// k = 1..n in order. Stops early when visit returns false.
void for_each_hnf_matrix(std::size_t n, std::size_t bound, const std::function<bool(const IntMatrix&)>& visit);

/// Enumerates one HNF matrix per distinct Q-row-space (first in enumeration order)
/// and checks dim M·V >= rk M.
RotundityReport is_rotund_up_to(const GVariety& v, std::size_t bound, std::size_t budget = kDefaultBudget);

struct Bounds {
    std::size_t rotund = 3;
    std::size_t mult = 5;
    std::size_t strong = 3;
    std::size_t m_max = 4;
    std::size_t budget = kDefaultBudget;
};

struct FamilyMemberReport {
    std::map<std::string, Rational> sample;  ///< empty for the symbolic member
    bool in_p_prime = false;
    std::string reason;  ///< exclusion reasons joined by "; ", empty when in P'
    std::optional<std::size_t> dimension;
    std::optional<FreenessCertificate> additive;
    std::optional<FreenessCertificate> multiplicative;
    std::optional<RotundityReport> rotundity;
};

struct FamilyFilterResult {
    FamilyMemberReport symbolic;  ///< parameters kept transcendental
    std::vector<FamilyMemberReport> samples;
};

/// Substitutes each sample into the family and tests the P' conditions:
/// dimension exactly n, additively free, multiplicatively free and rotund up to
/// the bounds. Irreducibility is assumed.
FamilyFilterResult family_filter(const GVariety& family, const std::vector<std::map<std::string, Rational>>& samples,
                                 const Bounds& bounds);

/// The family with the given parameters replaced by rational values.
GVariety specialize(const GVariety& family, const std::map<std::string, Rational>& sample,
                    std::size_t budget = kDefaultBudget);

}  // namespace expfield
