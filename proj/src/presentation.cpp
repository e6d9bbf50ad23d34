#include "expfield/presentation.hpp"

#include <algorithm>
#include <set>

#include "expfield/exppoly.hpp"

namespace expfield {

namespace {

RatMatrix unit_rows(std::size_t n, std::size_t from, std::size_t to) {
    RatMatrix m(to - from, n);
    for (std::size_t i = from; i < to; ++i) m(i - from, i) = Rational(1);
    return m;
}

RatMatrix stack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw DomainError("element tuples over different bases");
    RatMatrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
}

// Nonzero rows of the reduced row-echelon form.
RatMatrix span_basis(const RatMatrix& m) {
    RrefResult r = rref(m);
    RatMatrix out(r.rank, m.cols());
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r.reduced(i, j);
    return out;
}

std::string span_key(const RatMatrix& m) {
    RatMatrix b = span_basis(m);
    std::string key;
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) key += b(i, j).to_string() + ',';
        key += ';';
    }
    return key;
}

IntMatrix integer_rows(const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).denominator());
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).numerator() * (l / m(i, j).denominator());
    }
    return out;
}

RingPtr basis_ring(const std::vector<std::string>& basis) { return Ring::make(basis); }

}  // namespace

EFieldPresentation::EFieldPresentation(std::vector<std::string> basis, GVariety locus, std::optional<std::size_t> kernel)
    : basis_(std::move(basis)), locus_(std::move(locus)), kernel_(kernel) {
    if (locus_.n() != basis_.size())
        throw DomainError("locus lives in G^" + std::to_string(locus_.n()) + " but the basis has " +
                          std::to_string(basis_.size()) + " symbols");
    std::set<std::string> seen(basis_.begin(), basis_.end());
    if (seen.size() != basis_.size()) throw DomainError("duplicate basis symbol");
    td_ = dimension(locus_);
    if (kernel_) {
        const std::size_t k = *kernel_;
        if (k >= basis_.size()) throw DomainError("kernel index out of range");
        const MultiPoly rel = locus_.multiplicative(k) - MultiPoly::constant(locus_.ring(), Rational(1));
        if (!locus_.basis().contains(rel)) throw DomainError("kernel generator " + basis_[k] + " needs exp = 1 in the locus");
        IntMatrix row(1, basis_.size());
        row(0, k) = 1;
        if (image_dimension(row, locus_) != 1)
            throw DomainError("kernel generator " + basis_[k] + " must be transcendental");
    }
}

EFieldPresentation EFieldPresentation::with_kernel(const std::string& tau) {
    return EFieldPresentation({tau}, GVariety::parse(1, {"y1 - 1"}), 0);
}

EFieldPresentation EFieldPresentation::generic(const std::vector<std::string>& basis) {
    return EFieldPresentation(basis, GVariety(gn_ring(basis.size()), {}));
}

std::optional<std::string> EFieldPresentation::kernel_symbol() const {
    if (!kernel_) return std::nullopt;
    return basis_[*kernel_];
}

std::size_t EFieldPresentation::index_of(const std::string& symbol) const {
    auto it = std::find(basis_.begin(), basis_.end(), symbol);
    if (it == basis_.end()) throw DomainError("unknown basis symbol: " + symbol);
    return static_cast<std::size_t>(it - basis_.begin());
}

std::vector<Rational> EFieldPresentation::parse_element(const std::string& text) const {
    RingPtr r = basis_ring(basis_);
    MultiPoly p = parse_polynomial(text, r);
    std::vector<Rational> out(basis_.size());
    for (const auto& [e, c] : p.terms()) {
        std::size_t deg = 0, var = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) {
                deg += e[i];
                var = i;
            }
        if (deg != 1) throw DomainError("element is not a Q-linear combination of the basis: " + text);
        out[var] = c;
    }
    return out;
}

std::string EFieldPresentation::element_text(const std::vector<Rational>& coords) const {
    RingPtr r = basis_ring(basis_);
    MultiPoly p(r);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) p += coords[i] * MultiPoly::variable(r, i);
    return p.is_zero() ? "0" : p.to_string();
}

RatMatrix element_matrix(const EFieldPresentation& F, const std::vector<std::vector<Rational>>& elements) {
    RatMatrix m(elements.size(), F.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].size() != F.size()) throw DomainError("element not expressible over the basis");
        for (std::size_t j = 0; j < F.size(); ++j) m(i, j) = elements[i][j];
    }
    return m;
}

std::size_t td_of_span(const EFieldPresentation& F, const RatMatrix& a, std::size_t budget) {
    if (a.cols() != F.size()) throw DomainError("element not expressible over the basis");
    RatMatrix b = span_basis(a);
    if (b.rows() == 0) return 0;
    if (b.rows() == F.size()) return F.td();
    return image_dimension(integer_rows(b), F.locus(), budget);
}

namespace {

long delta_with_base_td(const EFieldPresentation& F, const RatMatrix& a, const RatMatrix& base, std::size_t base_td,
                        std::size_t base_rank, std::size_t budget) {
    RatMatrix all = stack(a, base);
    const long td_gain = static_cast<long>(td_of_span(F, all, budget)) - static_cast<long>(base_td);
    const long ldim_gain = static_cast<long>(rank(all)) - static_cast<long>(base_rank);
    return td_gain - ldim_gain;
}

}  // namespace

long delta(const EFieldPresentation& F, const RatMatrix& a, const RatMatrix& base, std::size_t budget) {
    if (a.cols() != F.size() || base.cols() != F.size()) throw DomainError("element not expressible over the basis");
    return delta_with_base_td(F, a, base, td_of_span(F, base, budget), rank(base), budget);
}

long delta(const EFieldPresentation& F, const RatMatrix& a, std::size_t budget) {
    return delta(F, a, RatMatrix(0, F.size()), budget);
}

SchanuelVerdict schanuel_check(const EFieldPresentation& F, const RatMatrix& a, std::size_t budget) {
    SchanuelVerdict v;
    v.delta = delta(F, a, budget);
    v.holds = v.delta >= 0;
    return v;
}

StrongResult is_strong_up_to(const EFieldPresentation& F, const RatMatrix& base, std::size_t bound, std::size_t budget) {
    if (bound < 1) throw DomainError("strongness bound must be at least 1");
    if (base.cols() != F.size()) throw DomainError("sub-presentation over a different basis");
    StrongResult res;
    res.bound = bound;
    const std::size_t base_td = td_of_span(F, base, budget), base_rank = rank(base);
    std::set<std::string> seen{span_key(base)};
    if (F.size() == 0) return res;
    for_each_hnf_matrix(F.size(), bound, [&](const IntMatrix& m) {
        RatMatrix a = to_rational(m);
        if (!seen.insert(span_key(stack(a, base))).second) return true;
        ++res.tuples_checked;
        long d = delta_with_base_td(F, a, base, base_td, base_rank, budget);
        if (d >= 0) return true;
        res.strong = false;
        res.witness = a;
        res.witness_delta = d;
        return false;
    });
    return res;
}

HullResult hull_up_to(const EFieldPresentation& F, const RatMatrix& b, std::size_t bound, std::size_t budget) {
    if (b.cols() != F.size()) throw DomainError("hull of elements over a different basis");
    // Precondition: some C ⊆ B strong. Smaller subsets first.
    const std::size_t k = b.rows();
    if (k > 12) throw DomainError("hull precondition check supports at most 12 generators");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t x, std::uint32_t y) { return __builtin_popcount(x) < __builtin_popcount(y); });
    bool ok = false;
    for (auto mask : masks) {
        RatMatrix c(0, F.size());
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) {
                RatMatrix row(1, F.size());
                for (std::size_t j = 0; j < F.size(); ++j) row(0, j) = b(i, j);
                c = stack(c, row);
            }
        if (is_strong_up_to(F, c, bound, budget).strong) {
            ok = true;
            break;
        }
    }
    if (!ok) throw DomainError("hull precondition failed: no subset of the generators is strong up to the bound");

    HullResult res;
    res.bound = bound;
    RatMatrix cur = span_basis(b);
    while (true) {
        StrongResult s = is_strong_up_to(F, cur, bound, budget);
        if (s.strong) break;
        res.trace.push_back(*s.witness);
        cur = span_basis(stack(cur, *s.witness));
    }
    res.span = cur;
    return res;
}

// ---------------------------------------------------------------- extensions

namespace {

std::vector<std::string> merged_params(const Ring& a, const Ring& b) {
    std::vector<std::string> out = a.param_names();
    for (const auto& p : b.param_names())
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    return out;
}

// Images of a variety's coordinates in G^total, starting at coordinate `offset`.
std::vector<MultiPoly> coordinate_images(const Ring& src, std::size_t n, std::size_t offset, std::size_t total,
                                         const RingPtr& target) {
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (i < n) images.push_back(MultiPoly::variable(target, offset + i));
        else if (i < 2 * n) images.push_back(MultiPoly::variable(target, total + offset + (i - n)));
        else images.push_back(MultiPoly::variable(target, src.name(i)));
    }
    return images;
}

}  // namespace

ExtensionResult extend_by_variety(const EFieldPresentation& F, const GVariety& v, const std::vector<std::string>& symbols,
                                  const Bounds& bounds) {
    const std::size_t n = v.n(), n0 = F.size();
    if (symbols.size() != n)
        throw DomainError("extension by a subvariety of G^" + std::to_string(n) + " needs " + std::to_string(n) +
                          " new symbols");
    for (const auto& s : symbols)
        if (std::find(F.basis().begin(), F.basis().end(), s) != F.basis().end())
            throw DomainError("symbol already in the basis: " + s);

    const std::size_t dim_v = dimension(v);
    if (dim_v < n) {
        ExtensionRejected err("V has dimension " + std::to_string(dim_v) + " < " + std::to_string(n), "dimension");
        err.dimension = dim_v;
        throw err;
    }
    FreenessCertificate add = is_additively_free(v, bounds.budget);
    if (!add.free()) {
        ExtensionRejected err("V is not additively free", "additive-freeness");
        err.freeness = add;
        throw err;
    }
    FreenessCertificate mult = is_multiplicatively_free_up_to(v, bounds.mult, bounds.budget);
    if (!mult.free()) {
        ExtensionRejected err("V is not multiplicatively free", "multiplicative-freeness");
        err.freeness = mult;
        throw err;
    }
    RotundityReport rot = is_rotund_up_to(v, bounds.rotund, bounds.budget);
    if (!rot.rotund()) {
        ExtensionRejected err("V is not rotund", "rotundity");
        err.rotundity = rot;
        throw err;
    }

    const std::size_t total = n0 + n;
    RingPtr ring = gn_ring(total, merged_params(*F.locus().ring(), *v.ring()));
    std::vector<MultiPoly> gens;
    auto base_images = coordinate_images(*F.locus().ring(), n0, 0, total, ring);
    for (const auto& g : F.locus().generators()) gens.push_back(substitute(g, ring, base_images));
    auto new_images = coordinate_images(*v.ring(), n, n0, total, ring);
    for (const auto& g : v.generators()) gens.push_back(substitute(g, ring, new_images));

    std::vector<std::string> basis = F.basis();
    basis.insert(basis.end(), symbols.begin(), symbols.end());
    EFieldPresentation ext(basis, GVariety(ring, gens, bounds.budget), F.kernel());
    StrongResult strong = is_strong_up_to(ext, unit_rows(total, 0, n0), bounds.strong, bounds.budget);
    return ExtensionResult{std::move(ext), symbols, dim_v == n, dim_v, std::move(add), std::move(mult),
                           std::move(rot), std::move(strong)};
}

namespace {

bool same_presentation(const EFieldPresentation& a, const EFieldPresentation& b) {
    return a.basis() == b.basis() && a.kernel() == b.kernel() && a.locus() == b.locus();
}

}  // namespace

IsomorphismResult extensions_isomorphic(const ExtensionDatum& e1, const ExtensionDatum& e2, std::size_t m_max,
                                        std::size_t budget) {
    if (!same_presentation(e1.base, e2.base)) throw DomainError("extensions over different base presentations");
    if (e1.v.n() != e2.v.n()) throw DomainError("extensions of different widths");
    if (m_max < 1) throw DomainError("m_max must be at least 1");
    const std::size_t n = e1.v.n();
    RingPtr common = gn_ring(n, merged_params(*e1.v.ring(), *e2.v.ring()));
    auto scaled = [&](const GVariety& v, std::size_t m) {
        IntMatrix d = IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) d(i, i) = static_cast<long>(m);
        return matrix_action(d, v.rename(common, budget), budget);
    };
    std::vector<GVariety> s1, s2;
    for (std::size_t m = 1; m <= m_max; ++m) {
        s1.push_back(scaled(e1.v, m));
        s2.push_back(scaled(e2.v, m));
    }
    IsomorphismResult res;
    res.m_max = m_max;
    for (std::size_t a = 0; a < m_max; ++a)
        for (std::size_t b = 0; b < m_max; ++b)
            if (s1[a] == s2[b]) {
                res.isomorphic = true;
                res.m = std::make_pair(a + 1, b + 1);
                return res;
            }
    return res;
}

IteratedConfig iterated_exp_config(std::size_t n, std::size_t budget) {
    std::vector<std::string> geo, basis;
    for (std::size_t i = 0; i <= n; ++i) geo.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i <= n; ++i) geo.push_back("y" + std::to_string(i));
    for (std::size_t i = 0; i <= n; ++i) basis.push_back("c" + std::to_string(i));
    RingPtr ring = Ring::make(geo);
    const std::size_t k = n + 1;
    std::vector<MultiPoly> gens;
    for (std::size_t i = 0; i < k; ++i)
        gens.push_back(MultiPoly::variable(ring, k + i) - MultiPoly::variable(ring, (i + 1) % k));
    GVariety v(ring, gens, budget);
    return IteratedConfig{EFieldPresentation(basis, v), v};
}

// ---------------------------------------------------------------- witnesses

WitnessVerdict verify_witness(const KhovanskiiSystem& sys, const EFieldPresentation& F,
                              const std::vector<std::vector<Rational>>& point, std::size_t budget) {
    const std::size_t n = sys.width();
    if (point.size() != n) throw DomainError("point has the wrong number of coordinates");
    const GVariety& locus = F.locus();
    const RingPtr& lr = locus.laurent_ring();
    const Ring& sr = *sys.jacobian().ring();

    auto uses_exp = [&](std::size_t i) {
        if (sys.jacobian().poly().involves(n + i)) return true;
        for (const auto& f : sys.equations())
            if (f.poly().involves(n + i)) return true;
        return false;
    };
    std::vector<MultiPoly> images(sr.size(), MultiPoly(lr));
    for (std::size_t i = 0; i < n; ++i) {
        const bool need_exp = uses_exp(i);
        if (point[i].size() != F.size()) throw DomainError("element not expressible over the basis");
        MultiPoly lin(lr);
        std::vector<Integer> exps(F.size());
        for (std::size_t k = 0; k < F.size(); ++k) {
            const Rational& c = point[i][k];
            if (c.is_zero()) continue;
            if (need_exp && !c.is_integer())
                throw DomainError("element not expressible: exp of a non-integral combination of the basis");
            lin += c * MultiPoly::variable(lr, k);
            if (need_exp) exps[k] = c.numerator();
        }
        images[i] = lin;
        if (need_exp) images[n + i] = locus.laurent_monomial(exps);
    }
    for (std::size_t i = 2 * n; i < sr.size(); ++i) {
        auto idx = lr->index_of(sr.name(i));
        if (!idx || !lr->is_param(*idx))
            throw DomainError("system coefficient " + sr.name(i) + " is not a parameter of the presentation");
        images[i] = MultiPoly::variable(lr, *idx);
    }
    auto vanishes = [&](const ExpPoly& f) {
        MultiPoly g = substitute(f.poly(), lr, images);
        return pseudo_normal_form(g, locus.laurent_basis(), budget).remainder.is_zero();
    };
    for (const auto& f : sys.equations())
        if (!vanishes(f)) return WitnessVerdict::EquationsFail;
    return vanishes(sys.jacobian()) ? WitnessVerdict::JacobianVanishes : WitnessVerdict::Witness;
}

}  // namespace expfield
