#include "expfield/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace expfield {

RingPtr gn_ring(std::size_t n, const std::vector<std::string>& params, const std::string& add,
                const std::string& mult) {
    std::vector<std::string> geo;
    for (std::size_t i = 1; i <= n; ++i) geo.push_back(add + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) geo.push_back(mult + std::to_string(i));
    return Ring::make(geo, params);
}

namespace {

std::string inverse_name(std::size_t i) { return "__w" + std::to_string(i + 1); }

RingPtr make_laurent_ring(const Ring& ring, std::size_t n) {
    std::vector<VarName> vars;
    for (std::size_t i = 0; i < 2 * n; ++i) vars.push_back(ring.vars()[i]);
    for (std::size_t i = 0; i < n; ++i) vars.push_back({inverse_name(i), VarKind::Geometric});
    for (std::size_t i = 2 * n; i < ring.size(); ++i) vars.push_back(ring.vars()[i]);
    return Ring::from_vars(std::move(vars));
}

std::vector<std::string> names_in(const Ring& ring, std::size_t from, std::size_t to) {
    std::vector<std::string> out;
    for (std::size_t i = from; i < to; ++i) out.push_back(ring.name(i));
    return out;
}

}  // namespace

GVariety::GVariety(RingPtr ring, const std::vector<MultiPoly>& gens, std::size_t budget)
    : ring_(std::move(ring)),
      input_(gens),
      basis_(ring_, MonomialOrder::grevlex(), {}),
      laurent_(ring_, MonomialOrder::grevlex(), {}) {
    if (ring_->num_geometric() % 2 != 0)
        throw DomainError("a subvariety of G^n needs an even number of coordinates");
    n_ = ring_->num_geometric() / 2;
    laurent_ring_ = make_laurent_ring(*ring_, n_);

    std::vector<MultiPoly> j;
    for (const auto& g : gens) {
        if (!g.ring() || !same_ring(g.ring(), ring_)) throw DomainError("variety generator over a foreign ring");
        if (!g.is_zero()) j.push_back(embed(g, laurent_ring_));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        Exponents e(laurent_ring_->size(), 0);
        e[n_ + i] = 1;
        e[2 * n_ + i] = 1;
        j.push_back(MultiPoly::monomial(laurent_ring_, e) - MultiPoly::constant(laurent_ring_, Rational(1)));
    }
    if (j.empty()) j.push_back(MultiPoly(laurent_ring_));
    laurent_ = groebner(laurent_ring_, j, MonomialOrder::elimination(names_in(*laurent_ring_, 2 * n_, 3 * n_)), budget);
    if (laurent_.is_empty_over_parameters()) throw DomainError("empty variety: the ideal is the unit ideal");

    std::vector<MultiPoly> saturated;
    for (const auto& g : laurent_.generators()) {
        bool uses_inverse = false;
        for (std::size_t i = 0; i < n_; ++i) uses_inverse = uses_inverse || g.involves(2 * n_ + i);
        if (!uses_inverse) saturated.push_back(embed(g, ring_));
    }
    // The w-free part of an elimination basis is already reduced and sorted for grevlex.
    basis_ = GroebnerBasis(ring_, MonomialOrder::grevlex(), std::move(saturated));
}

GVariety GVariety::parse(std::size_t n, const std::vector<std::string>& equations,
                         const std::vector<std::string>& params, std::size_t budget) {
    RingPtr ring = gn_ring(n, params);
    std::vector<MultiPoly> gens;
    for (const auto& eq : equations) {
        auto at = eq.find('=');
        if (at == std::string::npos) {
            gens.push_back(parse_polynomial(eq, ring));
            continue;
        }
        MultiPoly lhs = parse_polynomial(std::string_view(eq).substr(0, at), ring);
        try {
            gens.push_back(lhs - parse_polynomial(std::string_view(eq).substr(at + 1), ring));
        } catch (const ParseError& e) {
            throw ParseError(e.message(), e.line(), e.column() + at + 1);
        }
    }
    return GVariety(ring, gens, budget);
}

MultiPoly GVariety::laurent_monomial(const std::vector<Integer>& m) const {
    if (m.size() != n_) throw DomainError("exponent vector of the wrong length");
    Exponents e(laurent_ring_->size(), 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (m[i] > 0) e[n_ + i] = static_cast<std::uint32_t>(m[i].get_ui());
        else if (m[i] < 0) e[2 * n_ + i] = static_cast<std::uint32_t>(Integer(-m[i]).get_ui());
    }
    return MultiPoly::monomial(laurent_ring_, e);
}

GVariety GVariety::rename(const RingPtr& target, std::size_t budget) const {
    if (target->num_geometric() != 2 * n_) throw DomainError("rename: coordinate count mismatch");
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
        if (i < 2 * n_) images.push_back(MultiPoly::variable(target, i));
        else images.push_back(MultiPoly::variable(target, target->require(ring_->name(i))));
    }
    std::vector<MultiPoly> gens;
    for (const auto& g : generators()) gens.push_back(substitute(g, target, images));
    return GVariety(target, gens, budget);
}

namespace {

// Basis of the closure of M·V over internal coordinates u, v and V's parameters.
GroebnerBasis image_basis(const IntMatrix& m, const GVariety& v, std::size_t budget) {
    const std::size_t n = v.n(), k = m.rows();
    if (m.cols() != n)
        throw DomainError("matrix has " + std::to_string(m.cols()) + " columns, variety lives in G^" + std::to_string(n));
    const Ring& lr = *v.laurent_ring();
    std::vector<VarName> vars;
    for (std::size_t i = 0; i < k; ++i) vars.push_back({"__u" + std::to_string(i + 1), VarKind::Geometric});
    for (std::size_t i = 0; i < k; ++i) vars.push_back({"__v" + std::to_string(i + 1), VarKind::Geometric});
    for (const auto& var : lr.vars()) vars.push_back(var);
    RingPtr t = Ring::from_vars(std::move(vars));

    std::vector<MultiPoly> gens;
    for (const auto& g : v.laurent_basis().generators()) gens.push_back(embed(g, t));
    for (std::size_t i = 0; i < k; ++i) {
        MultiPoly lin = MultiPoly::variable(t, i);
        std::vector<Integer> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = m(i, j);
            if (m(i, j) != 0) lin -= Rational(m(i, j)) * MultiPoly::variable(t, 2 * k + j);
        }
        gens.push_back(lin);
        gens.push_back(MultiPoly::variable(t, k + i) - embed(v.laurent_monomial(row), t));
    }
    return eliminate(gens, names_in(lr, 0, 3 * n), budget);
}

}  // namespace

GVariety matrix_action(const IntMatrix& m, const GVariety& v, std::size_t budget) {
    GroebnerBasis img = image_basis(m, v, budget);
    const std::size_t k = m.rows();
    RingPtr target = k == v.n() ? v.ring() : gn_ring(k, v.ring()->param_names());
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < img.ring()->size(); ++i) {
        if (i < 2 * k) images.push_back(MultiPoly::variable(target, i));
        else images.push_back(MultiPoly::variable(target, img.ring()->name(i)));
    }
    std::vector<MultiPoly> gens;
    for (const auto& g : img.generators()) gens.push_back(substitute(g, target, images));
    return GVariety(target, gens, budget);
}

std::size_t image_dimension(const IntMatrix& m, const GVariety& v, std::size_t budget) {
    auto d = ideal_dimension(image_basis(m, v, budget));
    if (!d) throw DomainError("image of a nonempty variety is empty");
    return *d;
}

std::size_t dimension(const GVariety& v) { return *ideal_dimension(v.basis()); }

// ---------------------------------------------------------------- freeness

std::string to_string(FreenessCertificate::Verdict v) {
    switch (v) {
        case FreenessCertificate::Verdict::Free: return "free";
        case FreenessCertificate::Verdict::NotFree: return "not-free";
        case FreenessCertificate::Verdict::FreeUpToBound: return "free-up-to-bound";
    }
    return "";
}

std::string FreenessCertificate::constant_text() const {
    if (!constant_num) return "";
    std::string num = constant_num->is_zero() ? "0" : constant_num->to_string();
    if (!constant_den || (constant_den->is_constant() && constant_den->constant_term().is_one())) return num;
    return "(" + num + ")/(" + constant_den->to_string() + ")";
}

namespace {

bool has_geometric(const Exponents& e, std::size_t ng) {
    for (std::size_t i = 0; i < ng; ++i)
        if (e[i] != 0) return true;
    return false;
}

// Divides both by a rational denominator; leaves a genuine Q[p] fraction alone.
void normalize_fraction(MultiPoly& num, MultiPoly& den) {
    if (den.is_constant()) {
        num *= Rational(1) / den.constant_term();
        den = MultiPoly::constant(den.ring(), Rational(1));
    }
}

}  // namespace

FreenessCertificate is_additively_free(const GVariety& v, std::size_t budget) {
    FreenessCertificate cert;
    cert.kind = FreenessCertificate::Kind::Additive;
    const std::size_t n = v.n(), ng = v.ring()->num_geometric();

    std::vector<PseudoRemainder> prs;
    for (std::size_t i = 0; i < n; ++i) prs.push_back(pseudo_normal_form(v.additive(i), v.basis(), budget));
    std::vector<MultiPoly> distinct;
    for (const auto& pr : prs)
        if (std::find(distinct.begin(), distinct.end(), pr.multiplier) == distinct.end()) distinct.push_back(pr.multiplier);
    MultiPoly common = MultiPoly::constant(v.ring(), Rational(1));
    for (const auto& d : distinct) common = common * d;

    // r_i / mu_i rewritten over the common denominator
    std::vector<MultiPoly> scaled;
    for (const auto& pr : prs) {
        MultiPoly s = pr.remainder;
        for (const auto& d : distinct)
            if (d != pr.multiplier) s = s * d;
        scaled.push_back(std::move(s));
    }

    std::map<Exponents, std::size_t> column;
    for (const auto& s : scaled)
        for (const auto& [e, c] : s.terms())
            if (has_geometric(e, ng)) column.emplace(e, 0);
    std::size_t idx = 0;
    for (auto& [e, col] : column) col = idx++;
    std::vector<std::vector<Rational>> vectors(n, std::vector<Rational>(column.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [e, c] : scaled[i].terms())
            if (has_geometric(e, ng)) vectors[i][column.at(e)] = c;

    auto deps = q_linear_dependencies(vectors);
    if (deps.empty()) {
        cert.verdict = FreenessCertificate::Verdict::Free;
        return cert;
    }
    std::vector<Integer> m = primitive_integer_vector(deps.front());
    MultiPoly num(v.ring());
    for (std::size_t i = 0; i < n; ++i)
        if (m[i] != 0) num += Rational(m[i]) * scaled[i];
    normalize_fraction(num, common);
    cert.verdict = FreenessCertificate::Verdict::NotFree;
    cert.m = std::move(m);
    cert.constant_num = std::move(num);
    cert.constant_den = std::move(common);
    return cert;
}

namespace {

// Primitive vectors with max-norm d, first nonzero entry positive, in lexicographic order.
void primitive_vectors_of_norm(std::size_t n, long d, const std::function<bool(const std::vector<Integer>&)>& visit) {
    std::vector<long> cur(n, -d);
    while (true) {
        long mx = 0;
        Integer g = 0;
        long first = 0;
        for (long x : cur) {
            mx = std::max(mx, std::labs(x));
            g = gcd(g, Integer(x));
            if (first == 0) first = x;
        }
        if (mx == d && first > 0 && g == 1) {
            std::vector<Integer> m(cur.begin(), cur.end());
            if (!visit(m)) return;
        }
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (cur[pos] < d) {
                ++cur[pos];
                break;
            }
            cur[pos] = -d;
            if (pos == 0) return;
        }
        if (n == 0) return;
    }
}

}  // namespace

FreenessCertificate is_multiplicatively_free_up_to(const GVariety& v, std::size_t bound, std::size_t budget) {
    if (bound < 1) throw DomainError("multiplicative freeness bound must be at least 1");
    FreenessCertificate cert;
    cert.kind = FreenessCertificate::Kind::Multiplicative;
    cert.bound = bound;
    cert.verdict = FreenessCertificate::Verdict::FreeUpToBound;
    for (long d = 1; d <= static_cast<long>(bound) && !cert.m; ++d) {
        primitive_vectors_of_norm(v.n(), d, [&](const std::vector<Integer>& m) {
            PseudoRemainder pr = pseudo_normal_form(v.laurent_monomial(m), v.laurent_basis(), budget);
            if (!pr.remainder.is_parameter_constant()) return true;
            MultiPoly num = embed(pr.remainder, v.ring()), den = embed(pr.multiplier, v.ring());
            normalize_fraction(num, den);
            cert.verdict = FreenessCertificate::Verdict::NotFree;
            cert.m = m;
            cert.constant_num = std::move(num);
            cert.constant_den = std::move(den);
            return false;
        });
    }
    return cert;
}

bool recheck_freeness_witness(const GVariety& v, const FreenessCertificate& cert, std::size_t budget) {
    if (!cert.m || !cert.constant_num || !cert.constant_den) return false;
    const auto& m = *cert.m;
    if (m.size() != v.n() || std::all_of(m.begin(), m.end(), [](const Integer& x) { return x == 0; })) return false;
    if (cert.kind == FreenessCertificate::Kind::Additive) {
        MultiPoly lhs(v.ring());
        for (std::size_t i = 0; i < v.n(); ++i)
            if (m[i] != 0) lhs += Rational(m[i]) * v.additive(i);
        MultiPoly rel = lhs * *cert.constant_den - *cert.constant_num;
        return pseudo_normal_form(rel, v.basis(), budget).remainder.is_zero();
    }
    const RingPtr& lr = v.laurent_ring();
    MultiPoly rel = v.laurent_monomial(m) * embed(*cert.constant_den, lr) - embed(*cert.constant_num, lr);
    return pseudo_normal_form(rel, v.laurent_basis(), budget).remainder.is_zero();
}

// ---------------------------------------------------------------- rotundity

std::string to_string(RotundityReport::Verdict v) {
    return v == RotundityReport::Verdict::RotundUpTo ? "rotund-up-to-bound" : "not-rotund";
}

void for_each_hnf_matrix(std::size_t n, std::size_t bound, const std::function<bool(const IntMatrix&)>& visit) {
    const long b = static_cast<long>(bound);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> piv(k);
        std::iota(piv.begin(), piv.end(), 0);
        while (true) {
            std::vector<long> pv(k, 1);
            while (true) {
                // Free positions: right of a row's pivot; pivot columns get [0, pivot).
                struct Slot {
                    std::size_t r, c;
                    long lo, hi;
                };
                std::vector<Slot> slots;
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = piv[r] + 1; c < n; ++c) {
                        auto it = std::find(piv.begin(), piv.end(), c);
                        if (it != piv.end()) {
                            long p = pv[static_cast<std::size_t>(it - piv.begin())];
                            if (p > 1) slots.push_back({r, c, 0, p - 1});
                        } else {
                            slots.push_back({r, c, -b, b});
                        }
                    }
                IntMatrix m(k, n);
                for (std::size_t r = 0; r < k; ++r) m(r, piv[r]) = pv[r];
                std::vector<long> val;
                for (const auto& s : slots) val.push_back(s.lo);
                while (true) {
                    for (std::size_t s = 0; s < slots.size(); ++s) m(slots[s].r, slots[s].c) = val[s];
                    if (!visit(m)) return;
                    std::size_t s = slots.size();
                    bool done = true;
                    while (s > 0) {
                        --s;
                        if (val[s] < slots[s].hi) {
                            ++val[s];
                            done = false;
                            break;
                        }
                        val[s] = slots[s].lo;
                    }
                    if (done) break;
                }
                // next pivot values
                std::size_t t = k;
                bool done = true;
                while (t > 0) {
                    --t;
                    if (pv[t] < b) {
                        ++pv[t];
                        done = false;
                        break;
                    }
                    pv[t] = 1;
                }
                if (done) break;
            }
            // next pivot column set
            std::size_t t = k;
            bool done = true;
            while (t > 0) {
                --t;
                if (piv[t] < n - k + t) {
                    ++piv[t];
                    for (std::size_t u = t + 1; u < k; ++u) piv[u] = piv[u - 1] + 1;
                    done = false;
                    break;
                }
            }
            if (done) break;
        }
    }
}

namespace {

std::string rowspace_key(const RatMatrix& m) {
    RrefResult r = rref(m);
    std::string key;
    for (std::size_t i = 0; i < r.rank; ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) key += r.reduced(i, j).to_string() + ',';
        key += ';';
    }
    return key;
}

// Projection of V onto one group of coordinates is dominant.
bool projection_dominant(const GVariety& v, bool additive, std::size_t budget) {
    const std::size_t n = v.n();
    const Ring& lr = *v.laurent_ring();
    std::vector<std::string> drop = additive ? names_in(lr, n, 3 * n) : names_in(lr, 0, n);
    if (!additive) {
        auto w = names_in(lr, 2 * n, 3 * n);
        drop.insert(drop.end(), w.begin(), w.end());
    }
    return eliminate(v.laurent_basis().generators(), drop, budget).is_zero_ideal();
}

}  // namespace

RotundityReport is_rotund_up_to(const GVariety& v, std::size_t bound, std::size_t budget) {
    if (bound < 1) throw DomainError("rotundity bound must be at least 1");
    RotundityReport rep;
    rep.bound = bound;
    rep.verdict = RotundityReport::Verdict::RotundUpTo;
    const std::size_t n = v.n();
    if (projection_dominant(v, true, budget)) {
        rep.shortcut = "additive coordinates algebraically independent";
        return rep;
    }
    if (projection_dominant(v, false, budget)) {
        rep.shortcut = "multiplicative coordinates algebraically independent";
        return rep;
    }
    std::set<std::string> seen;
    for_each_hnf_matrix(n, bound, [&](const IntMatrix& m) {
        if (!seen.insert(rowspace_key(to_rational(m))).second) return true;
        ++rep.matrices_checked;
        const std::size_t d = image_dimension(m, v, budget);
        if (d >= m.rows()) return true;
        IntMatrix padded(n, n);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) padded(i, j) = m(i, j);
        rep.verdict = RotundityReport::Verdict::NotRotund;
        rep.counterexample = RotundityReport::Counterexample{padded, d, m.rows()};
        return false;
    });
    return rep;
}

// ---------------------------------------------------------------- families

GVariety specialize(const GVariety& family, const std::map<std::string, Rational>& sample, std::size_t budget) {
    const Ring& r = *family.ring();
    for (const auto& [name, value] : sample) {
        auto idx = r.index_of(name);
        if (!idx || !r.is_param(*idx)) throw DomainError("sample names an unknown parameter: " + name);
    }
    std::vector<std::string> params;
    for (const auto& p : r.param_names())
        if (!sample.count(p)) params.push_back(p);
    RingPtr target = Ring::make(r.geometric_names(), params);
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < r.size(); ++i) {
        auto it = sample.find(r.name(i));
        images.push_back(it != sample.end() ? MultiPoly::constant(target, it->second)
                                            : MultiPoly::variable(target, r.name(i)));
    }
    std::vector<MultiPoly> gens;
    for (const auto& g : family.input_generators()) gens.push_back(substitute(g, target, images));
    return GVariety(target, gens, budget);
}

namespace {

FamilyMemberReport evaluate_member(const GVariety& v, const Bounds& bounds) {
    FamilyMemberReport rep;
    std::vector<std::string> reasons;
    rep.dimension = dimension(v);
    if (*rep.dimension != v.n())
        reasons.push_back("dimension " + std::to_string(*rep.dimension) + " != " + std::to_string(v.n()));
    rep.additive = is_additively_free(v, bounds.budget);
    if (!rep.additive->free()) reasons.push_back("additively not-free");
    rep.multiplicative = is_multiplicatively_free_up_to(v, bounds.mult, bounds.budget);
    if (!rep.multiplicative->free()) reasons.push_back("multiplicatively not-free");
    rep.rotundity = is_rotund_up_to(v, bounds.rotund, bounds.budget);
    if (!rep.rotundity->rotund()) reasons.push_back("not rotund");
    for (std::size_t i = 0; i < reasons.size(); ++i) rep.reason += (i ? "; " : "") + reasons[i];
    rep.in_p_prime = reasons.empty();
    return rep;
}

}  // namespace

FamilyFilterResult family_filter(const GVariety& family, const std::vector<std::map<std::string, Rational>>& samples,
                                 const Bounds& bounds) {
    FamilyFilterResult out;
    out.symbolic = evaluate_member(family, bounds);
    for (const auto& s : samples) {
        FamilyMemberReport rep;
        std::optional<GVariety> member;
        try {
            member.emplace(specialize(family, s, bounds.budget));
        } catch (const DomainError& e) {
            if (std::string(e.what()).rfind("empty variety", 0) != 0) throw;
        }
        if (member) rep = evaluate_member(*member, bounds);
        else rep.reason = "empty variety";
        rep.sample = s;
        out.samples.push_back(std::move(rep));
    }
    return out;
}

}  // namespace expfield
