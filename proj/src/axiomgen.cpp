#include "expfield/axiomgen.hpp"

#include <algorithm>
#include <set>

namespace expfield {

namespace {

// prefix1..prefixN with the prefix extended by underscores until no name is taken.
std::vector<std::string> fresh_names(std::string prefix, std::size_t count, const std::set<std::string>& taken) {
    while (true) {
        std::vector<std::string> out;
        bool clash = false;
        for (std::size_t i = 1; i <= count; ++i) {
            out.push_back(prefix + std::to_string(i));
            clash = clash || taken.count(out.back());
        }
        if (!clash) return out;
        prefix += '_';
    }
}

Term sum(std::vector<Term> ts) {
    if (ts.empty()) return Term::num(Rational(0));
    Term acc = std::move(ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) acc = Term::add(std::move(acc), std::move(ts[i]));
    return acc;
}

Term dot(const std::vector<std::string>& coeffs, const std::vector<std::string>& vars) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < vars.size(); ++i) ts.push_back(Term::mul(Term::var(coeffs[i]), Term::var(vars[i])));
    return sum(std::move(ts));
}

std::vector<Term> vars_of(const std::vector<std::string>& names) {
    std::vector<Term> out;
    for (const auto& n : names) out.push_back(Term::var(n));
    return out;
}

// Equations (x, exp x) in V with additive coordinates renamed to `names`.
std::vector<Formula> membership(const GVariety& v, const std::vector<std::string>& names) {
    const Ring& r = *v.ring();
    std::vector<Term> terms;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < v.n()) terms.push_back(Term::var(names[i]));
        else if (i < 2 * v.n()) terms.push_back(Term::exp(Term::var(names[i - v.n()])));
        else terms.push_back(Term::var(r.name(i)));
    }
    std::vector<Formula> out;
    for (const auto& g : v.generators()) out.push_back(Formula::eq(poly_to_term(g, terms), Term::num(Rational(0))));
    return out;
}

std::vector<std::string> additive_names(const GVariety& v) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.n(); ++i) out.push_back(v.ring()->name(i));
    return out;
}

std::set<std::string> ring_names(const Ring& r) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < r.size(); ++i) out.insert(r.name(i));
    return out;
}

}  // namespace

Formula schanuel_axiom_instance(const GVariety& v) {
    if (v.has_parameters()) throw DomainError("the Schanuel scheme needs a variety defined over Q (no parameters)");
    const std::size_t n = v.n(), dim = dimension(v);
    if (n == 0 || dim + 1 != n)
        throw DomainError("the Schanuel scheme needs dimension n - 1 = " + std::to_string(n == 0 ? 0 : n - 1) +
                          ", got " + std::to_string(dim));
    auto xs = additive_names(v);
    auto ms = fresh_names("m", n, ring_names(*v.ring()));
    Formula body = Formula::implies(Formula::conj(membership(v, xs)), Formula::eq(dot(ms, xs), Term::num(Rational(0))));
    return Formula::forall(xs, Formula::exists_in(ms, Domain::Z, true, std::move(body)));
}

SeacInstance seac_axiom_instance(const GVariety& family, std::size_t r) {
    const std::size_t n = family.n();
    if (n == 0) throw DomainError("the scheme needs a family in G^n with n >= 1");
    const auto params = family.ring()->param_names();
    const auto xs = additive_names(family);
    std::set<std::string> taken = ring_names(*family.ring());
    const auto as = fresh_names("a", r, taken);
    taken.insert(as.begin(), as.end());
    const auto ms = fresh_names("m", n + r, taken);

    std::vector<Term> p_terms = vars_of(params);
    auto with_n = p_terms;
    with_n.push_back(Term::num(Rational(static_cast<long>(n))));
    Formula in_p_prime = Formula::conj({Formula::pred("Irreducible", p_terms), Formula::pred("HasDimension", with_n),
                                        Formula::pred("Rotund", p_terms), Formula::pred("AddFree", p_terms),
                                        Formula::pred("MultFree", p_terms)});

    std::vector<std::string> m_x(ms.begin(), ms.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<std::string> m_a(ms.begin() + static_cast<std::ptrdiff_t>(n), ms.end());
    Term relation = r ? Term::add(dot(m_x, xs), dot(m_a, as)) : dot(m_x, xs);
    std::vector<Formula> zeros;
    for (const auto& m : m_x) zeros.push_back(Formula::eq(Term::var(m), Term::num(Rational(0))));
    Formula consequent =
        Formula::implies(Formula::eq(std::move(relation), Term::num(Rational(0))), Formula::conj(std::move(zeros)));

    std::vector<Formula> matrix = membership(family, xs);
    if (matrix.empty()) matrix.push_back(Formula::truth());
    matrix.push_back(std::move(consequent));
    Formula body = Formula::forall_in(ms, Domain::Q, false, Formula::conj(std::move(matrix)));
    body = Formula::forall(as, Formula::exists(xs, std::move(body)));
    SeacInstance out{Formula::forall(params, Formula::implies(std::move(in_p_prime), std::move(body))), {}};

    // AddFree has an explicit definition quantifying over Z; the others are cited as definable.
    std::set<std::string> taken2 = ring_names(*family.ring());
    const auto km = fresh_names("k", n, taken2);
    taken2.insert(km.begin(), km.end());
    const std::string z = fresh_names("z", 1, taken2)[0];
    std::vector<std::string> ys;
    for (std::size_t i = 0; i < n; ++i) ys.push_back(family.ring()->name(n + i));
    std::vector<Term> point;
    for (std::size_t i = 0; i < family.ring()->size(); ++i) point.push_back(Term::var(family.ring()->name(i)));
    std::vector<Formula> memb;
    for (const auto& g : family.generators())
        memb.push_back(Formula::eq(poly_to_term(g, point), Term::num(Rational(0))));
    Term prod = Term::var(ys[0]);
    for (std::size_t i = 1; i < n; ++i) prod = Term::mul(std::move(prod), Term::var(ys[i]));
    memb.push_back(Formula::negation(Formula::eq(std::move(prod), Term::num(Rational(0)))));
    memb.push_back(Formula::negation(Formula::eq(dot(km, xs), Term::var(z))));
    std::vector<std::string> point_vars = xs;
    point_vars.insert(point_vars.end(), ys.begin(), ys.end());
    Formula addfree = Formula::forall_in(
        km, Domain::Z, true, Formula::forall({z}, Formula::exists(point_vars, Formula::conj(std::move(memb)))));

    out.definitions = {
        {"Irreducible", params, "V_p is irreducible (definable in the field language by the fibre dimension theorem)",
         std::nullopt},
        {"HasDimension", params, "V_p has dimension n (definable in the field language by the fibre dimension theorem)",
         std::nullopt},
        {"Rotund", params, "dim M.V_p >= rk M for every integer matrix M (first-order definable in the field language)",
         std::nullopt},
        {"AddFree", params, "V_p lies in no coset of a proper additive subgroup defined by a rational equation",
         addfree},
        {"MultFree", params,
         "V_p lies in no coset of a proper algebraic subgroup of the multiplicative part (first-order definable)",
         std::nullopt},
    };
    return out;
}

Formula ccp_axiom_instance(const std::vector<ExpPoly>& fs) {
    Formula chi = chi_formula(fs);
    const Ring& r = *fs.front().ring();
    const std::size_t n = fs.front().arity();
    std::vector<std::string> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(r.name(i));
    std::vector<std::string> rest(xs.begin() + 1, xs.end());
    Formula q = Formula::uncountably(xs[0], Formula::exists(rest, std::move(chi)));
    return Formula::forall(r.param_names(), Formula::negation(std::move(q)));
}

namespace {

void check_isolating_input(const EFieldPresentation& F, const IsolatingInput& in, std::vector<std::size_t>& x0_idx,
                           std::size_t budget) {
    const std::size_t n = in.a.rows(), r = in.v.n(), N = F.size();
    if (n == 0) throw DomainError("isolating formula for an empty tuple");
    if (in.a.cols() != N || in.b.cols() != N) throw DomainError("element not expressible over the basis");
    if (in.b.rows() != r) throw DomainError("witness tuple length differs from the width of V");
    if (in.m.rows() != n || in.m.cols() != r) throw DomainError("M must be " + std::to_string(n) + " x " + std::to_string(r));
    for (std::size_t j = 0; j < n; ++j) {
        bool zero = true;
        for (std::size_t k = 0; k < r; ++k) zero = zero && in.m(j, k).is_zero();
        if (zero) throw DomainError("row " + std::to_string(j + 1) + " of M is zero, so x" + std::to_string(j + 1) +
                                    " is not in the span of y");
    }
    if (!(in.m * in.b == in.a)) throw DomainError("decomposition inconsistent: a differs from M b");

    RatMatrix span(r + x0_idx.size(), N);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < N; ++k) span(i, k) = in.b(i, k);
    for (std::size_t i = 0; i < x0_idx.size(); ++i) span(r + i, x0_idx[i]) = Rational(1);
    if (rank(span) != span.rows()) throw DomainError("decomposition inconsistent: b is not Q-independent over X0");

    const GVariety& locus = F.locus();
    const RingPtr& lr = locus.laurent_ring();
    const Ring& vr = *in.v.ring();
    std::vector<MultiPoly> images(vr.size(), MultiPoly(lr));
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<Integer> e(N);
        MultiPoly lin(lr);
        for (std::size_t k = 0; k < N; ++k) {
            const Rational& c = in.b(i, k);
            if (c.is_zero()) continue;
            if (!c.is_integer()) throw DomainError("decomposition inconsistent: exp of a non-integral combination");
            lin += c * MultiPoly::variable(lr, k);
            e[k] = c.numerator();
        }
        images[i] = lin;
        images[r + i] = locus.laurent_monomial(e);
    }
    for (std::size_t i = 2 * r; i < vr.size(); ++i) {
        const std::string& name = vr.name(i);
        auto it = std::find(F.basis().begin(), F.basis().end(), name);
        std::size_t k = static_cast<std::size_t>(it - F.basis().begin());
        if (it != F.basis().end() && std::find(x0_idx.begin(), x0_idx.end(), k) != x0_idx.end()) {
            images[i] = MultiPoly::variable(lr, k);
        } else if (auto idx = lr->index_of(name); idx && lr->is_param(*idx)) {
            images[i] = MultiPoly::variable(lr, *idx);
        } else {
            throw DomainError("parameter " + name + " of V is neither in X0 nor a parameter of the presentation");
        }
    }
    for (const auto& g : in.v.generators())
        if (!pseudo_normal_form(substitute(g, lr, images), locus.laurent_basis(), budget).remainder.is_zero())
            throw DomainError("decomposition inconsistent: (b, exp b) is not on V");
}

}  // namespace

Formula isolating_formula(const EFieldPresentation& F, const IsolatingInput& in, std::size_t budget) {
    std::vector<std::string> x0 = in.x0;
    if (auto tau = F.kernel_symbol(); tau && std::find(x0.begin(), x0.end(), *tau) == x0.end()) x0.push_back(*tau);
    std::vector<std::size_t> x0_idx;
    for (const auto& s : x0) x0_idx.push_back(F.index_of(s));
    check_isolating_input(F, in, x0_idx, budget);

    const std::size_t n = in.a.rows(), r = in.v.n();
    std::set<std::string> taken(x0.begin(), x0.end());
    for (const auto& p : in.v.ring()->param_names()) taken.insert(p);
    const auto xs = fresh_names("x", n, taken);
    taken.insert(xs.begin(), xs.end());
    const auto ys = fresh_names("y", r, taken);
    taken.insert(ys.begin(), ys.end());
    const auto ms = fresh_names("m", r, taken);
    taken.insert(ms.begin(), ms.end());
    const auto ks = fresh_names("k", x0.size(), taken);

    std::vector<Formula> parts = membership(in.v, ys);
    Term lhs = dot(ms, ys);
    Formula indep = x0.empty()
                        ? Formula::negation(Formula::eq(std::move(lhs), Term::num(Rational(0))))
                        : Formula::forall_in(ks, Domain::Q, false,
                                             Formula::negation(Formula::eq(std::move(lhs), dot(ks, x0))));
    parts.push_back(Formula::forall_in(ms, Domain::Q, true, std::move(indep)));

    RingPtr yring = Ring::make(ys);
    std::vector<Term> yterms = vars_of(ys);
    for (std::size_t j = 0; j < n; ++j) {
        MultiPoly comb(yring);
        for (std::size_t k = 0; k < r; ++k) comb += in.m(j, k) * MultiPoly::variable(yring, k);
        parts.push_back(Formula::eq(Term::var(xs[j]), poly_to_term(comb, yterms)));
    }
    return Formula::exists(ys, Formula::conj(std::move(parts)));
}

}  // namespace expfield
