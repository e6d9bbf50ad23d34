#include "expfield/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace expfield {

// ---------------------------------------------------------------- Ring

RingPtr Ring::from_vars(std::vector<VarName> vars) {
    auto ring = std::make_shared<Ring>();
    std::stable_partition(vars.begin(), vars.end(),
                          [](const VarName& v) { return v.kind == VarKind::Geometric; });
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].name.empty()) throw DomainError("empty variable name");
        for (std::size_t j = 0; j < i; ++j)
            if (vars[j].name == vars[i].name) throw DomainError("duplicate variable name: " + vars[i].name);
    }
    ring->num_geometric_ = static_cast<std::size_t>(
        std::count_if(vars.begin(), vars.end(), [](const VarName& v) { return v.kind == VarKind::Geometric; }));
    ring->vars_ = std::move(vars);
    return ring;
}

RingPtr Ring::make(const std::vector<std::string>& geometric, const std::vector<std::string>& params) {
    std::vector<VarName> vars;
    for (const auto& g : geometric) vars.push_back({g, VarKind::Geometric});
    for (const auto& p : params) vars.push_back({p, VarKind::Parameter});
    return from_vars(std::move(vars));
}

std::optional<std::size_t> Ring::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    return std::nullopt;
}

std::size_t Ring::require(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw DomainError("unknown variable: " + name);
    return *i;
}

std::vector<std::string> Ring::param_names() const {
    std::vector<std::string> out;
    for (std::size_t i = num_geometric_; i < vars_.size(); ++i) out.push_back(vars_[i].name);
    return out;
}

std::vector<std::string> Ring::geometric_names() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < num_geometric_; ++i) out.push_back(vars_[i].name);
    return out;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

RingPtr subring(const RingPtr& ring, const std::vector<std::string>& keep) {
    std::vector<VarName> vars;
    for (const auto& v : ring->vars())
        if (std::find(keep.begin(), keep.end(), v.name) != keep.end()) vars.push_back(v);
    return Ring::from_vars(std::move(vars));
}

// ---------------------------------------------------------------- MultiPoly

namespace {

void check_ring(const RingPtr& a, const RingPtr& b) {
    if (!same_ring(a, b)) throw DomainError("polynomials belong to different rings");
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

}  // namespace

MultiPoly::MultiPoly(RingPtr ring, TermMap terms) : ring_(std::move(ring)) {
    for (auto& [e, c] : terms) {
        if (e.size() != ring_->size()) throw DomainError("exponent vector does not match ring");
        if (!c.is_zero()) terms_.emplace(e, c);
    }
}

MultiPoly MultiPoly::constant(RingPtr ring, const Rational& c) {
    MultiPoly p(ring);
    if (!c.is_zero()) p.terms_.emplace(Exponents(ring->size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->size()) throw DomainError("variable index out of range");
    Exponents e(ring->size(), 0);
    e[index] = 1;
    return monomial(std::move(ring), std::move(e));
}

MultiPoly MultiPoly::variable(RingPtr ring, const std::string& name) {
    std::size_t i = ring->require(name);
    return variable(std::move(ring), i);
}

MultiPoly MultiPoly::monomial(RingPtr ring, Exponents e, const Rational& c) {
    if (e.size() != ring->size()) throw DomainError("exponent vector does not match ring");
    MultiPoly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

bool MultiPoly::is_parameter_constant() const {
    const std::size_t ng = ring_ ? ring_->num_geometric() : 0;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < ng; ++i)
            if (e[i] != 0) return false;
    return true;
}

Rational MultiPoly::constant_term() const {
    if (!ring_) return Rational(0);
    return coefficient(Exponents(ring_->size(), 0));
}

Rational MultiPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool MultiPoly::involves(std::size_t var) const {
    for (const auto& [e, c] : terms_)
        if (e[var] != 0) return true;
    return false;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

std::uint32_t MultiPoly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(*this);
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (!ring_) ring_ = o.ring_;
    if (o.terms_.empty()) return *this;
    check_ring(ring_, o.ring_);
    for (const auto& [e, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (!ring_) ring_ = o.ring_;
    if (o.terms_.empty()) return *this;
    check_ring(ring_, o.ring_);
    for (const auto& [e, c] : o.terms_) {
        auto [it, inserted] = terms_.emplace(e, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
    if (a.ring_ && b.ring_) check_ring(a.ring_, b.ring_);
    MultiPoly out(ring);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e = add_exponents(ea, eb);
            auto [it, inserted] = out.terms_.emplace(std::move(e), ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second.is_zero()) out.terms_.erase(it);
            }
        }
    return out;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly result = constant(ring_, Rational(1));
    MultiPoly base = *this;
    while (k > 0) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

namespace {

std::string monomial_text(const Ring& ring, const Exponents& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += ring.name(i);
        if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out;
}

}  // namespace

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    MonomialComparator cmp(ring_, MonomialOrder::grevlex());
    std::vector<const TermMap::value_type*> sorted;
    for (const auto& t : terms_) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(),
              [&](auto* a, auto* b) { return cmp.greater(a->first, b->first); });
    std::string out;
    bool first = true;
    for (const auto* t : sorted) {
        const Rational& c = t->second;
        std::string mono = monomial_text(*ring_, t->first);
        Rational mag = abs(c);
        if (first) {
            if (c.sign() < 0) out += '-';
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            out += mag.to_string();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.to_string() + '*' + mono;
        }
    }
    return out;
}

MultiPoly embed(const MultiPoly& f, const RingPtr& target) {
    const Ring& src = *f.ring();
    std::vector<std::optional<std::size_t>> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->index_of(src.name(i));
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : f.terms()) {
        Exponents out(target->size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!map[i]) throw DomainError("variable " + src.name(i) + " does not exist in the target ring");
            out[*map[i]] = e[i];
        }
        terms.emplace(std::move(out), c);
    }
    return MultiPoly(target, std::move(terms));
}

MultiPoly substitute(const MultiPoly& f, const RingPtr& target, const std::vector<MultiPoly>& images) {
    if (images.size() != f.ring()->size()) throw DomainError("substitute: wrong number of images");
    std::vector<std::vector<MultiPoly>> powers(images.size());
    auto power = [&](std::size_t var, std::uint32_t k) -> const MultiPoly& {
        auto& cache = powers[var];
        if (cache.empty()) cache.push_back(MultiPoly::constant(target, Rational(1)));
        while (cache.size() <= k) cache.push_back(cache.back() * embed(images[var], target));
        return cache[k];
    };
    MultiPoly out(target);
    for (const auto& [e, c] : f.terms()) {
        MultiPoly term = MultiPoly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term = term * power(i, e[i]);
        out += term;
    }
    return out;
}

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var) {
    if (var >= f.ring()->size()) throw DomainError("variable index out of range");
    if (f.ring()->is_param(var)) throw DomainError("cannot differentiate by parameter " + f.ring()->name(var));
    MultiPoly::TermMap terms;
    for (const auto& [e, c] : f.terms()) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        terms.emplace(std::move(d), c * Rational(static_cast<long>(e[var])));
    }
    return MultiPoly(f.ring(), std::move(terms));
}

MultiPoly partial_derivative(const MultiPoly& f, const std::string& var) {
    return partial_derivative(f, f.ring()->require(var));
}

// ---------------------------------------------------------------- orders

std::string MonomialOrder::to_string() const {
    switch (kind_) {
        case Kind::Grevlex: return "grevlex";
        case Kind::Lex: return "lex";
        case Kind::Elimination: {
            std::string s = "elim(";
            for (std::size_t i = 0; i < block_.size(); ++i) s += (i ? "," : "") + block_[i];
            return s + ")";
        }
    }
    return "?";
}

MonomialComparator::MonomialComparator(const RingPtr& ring, const MonomialOrder& order) {
    const std::size_t ng = ring->num_geometric();
    std::vector<std::size_t> geo(ng), params;
    std::iota(geo.begin(), geo.end(), 0);
    for (std::size_t i = ng; i < ring->size(); ++i) params.push_back(i);
    switch (order.kind()) {
        case MonomialOrder::Kind::Grevlex:
            if (!geo.empty()) blocks_.push_back(geo);
            if (!params.empty()) blocks_.push_back(params);
            break;
        case MonomialOrder::Kind::Lex:
            for (auto i : geo) blocks_.push_back({i});
            for (auto i : params) blocks_.push_back({i});
            break;
        case MonomialOrder::Kind::Elimination: {
            std::vector<std::size_t> first, rest;
            for (auto i : geo) {
                bool in_block = std::find(order.block().begin(), order.block().end(), ring->name(i)) !=
                                order.block().end();
                (in_block ? first : rest).push_back(i);
            }
            for (const auto& b : order.block()) {
                auto idx = ring->index_of(b);
                if (!idx) throw DomainError("elimination block names unknown variable " + b);
                if (ring->is_param(*idx)) throw DomainError("cannot eliminate parameter " + b);
            }
            if (!first.empty()) blocks_.push_back(first);
            if (!rest.empty()) blocks_.push_back(rest);
            if (!params.empty()) blocks_.push_back(params);
            break;
        }
    }
}

int MonomialComparator::compare(const Exponents& a, const Exponents& b) const {
    for (const auto& block : blocks_) {
        std::uint64_t da = 0, db = 0;
        for (auto i : block) {
            da += a[i];
            db += b[i];
        }
        if (da != db) return da > db ? 1 : -1;
        // Reverse lex: the last differing variable decides, smaller exponent is larger.
        for (auto it = block.rbegin(); it != block.rend(); ++it) {
            if (a[*it] != b[*it]) return a[*it] < b[*it] ? 1 : -1;
        }
    }
    return 0;
}

// ---------------------------------------------------------------- engine

namespace {

struct Term {
    Exponents e;
    Rational c;
};
using TPoly = std::vector<Term>;  // strictly descending in the active order

class BudgetCounter {
public:
    explicit BudgetCounter(std::size_t limit) : limit_(limit) {}
    void spend() {
        if (++used_ > limit_) throw BudgetExceeded(limit_);
    }

private:
    std::size_t limit_;
    std::size_t used_ = 0;
};

bool divides(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponents quotient(const Exponents& b, const Exponents& a) {
    Exponents out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = b[i] - a[i];
    return out;
}

Exponents lcm_exponents(const Exponents& a, const Exponents& b) {
    Exponents out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return out;
}

bool coprime(const Exponents& a, const Exponents& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) return false;
    return true;
}

std::uint64_t degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), std::uint64_t{0}); }

TPoly to_tpoly(const MultiPoly& f, const MonomialComparator& cmp) {
    TPoly out;
    out.reserve(f.num_terms());
    for (const auto& [e, c] : f.terms()) out.push_back({e, c});
    std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return cmp.greater(a.e, b.e); });
    return out;
}

MultiPoly from_tpoly(const TPoly& f, const RingPtr& ring) {
    MultiPoly::TermMap terms;
    for (const auto& t : f) terms.emplace(t.e, t.c);
    return MultiPoly(ring, std::move(terms));
}

/// f[start..] - c * x^m * g, merged in order.
TPoly sub_mul(const TPoly& f, std::size_t start, const Rational& c, const Exponents& m, const TPoly& g,
              const MonomialComparator& cmp) {
    TPoly out;
    out.reserve(f.size() - start + g.size());
    std::size_t i = start, j = 0;
    Exponents shifted;
    while (i < f.size() || j < g.size()) {
        if (j < g.size()) shifted = add_exponents(g[j].e, m);
        int order = (i >= f.size()) ? -1 : (j >= g.size() ? 1 : cmp.compare(f[i].e, shifted));
        if (order > 0) {
            out.push_back(f[i++]);
        } else if (order < 0) {
            out.push_back({shifted, -(c * g[j].c)});
            ++j;
        } else {
            Rational v = f[i].c - c * g[j].c;
            if (!v.is_zero()) out.push_back({f[i].e, std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

TPoly mul(const TPoly& a, const TPoly& b, const MonomialComparator& cmp) {
    std::map<Exponents, Rational> acc;
    for (const auto& ta : a)
        for (const auto& tb : b) {
            auto [it, inserted] = acc.emplace(add_exponents(ta.e, tb.e), ta.c * tb.c);
            if (!inserted) it->second += ta.c * tb.c;
        }
    TPoly out;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) out.push_back({e, c});
    std::sort(out.begin(), out.end(), [&](const Term& x, const Term& y) { return cmp.greater(x.e, y.e); });
    return out;
}

TPoly scale(TPoly f, const Rational& c) {
    for (auto& t : f) t.c *= c;
    return f;
}

void make_monic(TPoly& f) {
    if (f.empty() || f.front().c.is_one()) return;
    Rational inv = Rational(1) / f.front().c;
    for (auto& t : f) t.c *= inv;
}

/// Full reduction of f by the reducers (leading terms first).
TPoly reduce_full(TPoly f, const std::vector<const TPoly*>& reducers, const MonomialComparator& cmp,
                  BudgetCounter& budget) {
    TPoly rem;
    std::size_t pos = 0;
    while (pos < f.size()) {
        const TPoly* hit = nullptr;
        for (const TPoly* g : reducers)
            if (divides(g->front().e, f[pos].e)) {
                hit = g;
                break;
            }
        if (!hit) {
            rem.push_back(std::move(f[pos]));
            ++pos;
            continue;
        }
        budget.spend();
        Rational c = f[pos].c / hit->front().c;
        f = sub_mul(f, pos, c, quotient(f[pos].e, hit->front().e), *hit, cmp);
        pos = 0;
    }
    return rem;
}

class Buchberger {
public:
    Buchberger(RingPtr ring, const MonomialComparator& cmp, std::size_t budget)
        : ring_(std::move(ring)), cmp_(cmp), budget_(budget) {}

    std::vector<MultiPoly> run(const std::vector<MultiPoly>& input) {
        for (const auto& f : input) {
            TPoly h = reduce_full(to_tpoly(f, cmp_), active_reducers(), cmp_, budget_);
            if (h.empty()) continue;
            make_monic(h);
            add(std::move(h));
        }
        while (!pairs_.empty()) {
            auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
                if (a.deg != b.deg) return a.deg < b.deg;
                int c = cmp_.compare(a.lcm, b.lcm);
                if (c != 0) return c < 0;
                return std::pair(a.i, a.j) < std::pair(b.i, b.j);
            });
            Pair p = *best;
            pairs_.erase(best);
            TPoly s = spoly(p);
            TPoly h = reduce_full(std::move(s), active_reducers(), cmp_, budget_);
            if (h.empty()) continue;
            make_monic(h);
            add(std::move(h));
        }
        return finalize();
    }

private:
    struct Pair {
        std::size_t i, j;
        Exponents lcm;
        std::uint64_t deg;
    };

    std::vector<const TPoly*> active_reducers() const {
        std::vector<const TPoly*> out;
        out.reserve(active_.size());
        for (auto i : active_) out.push_back(&polys_[i]);
        return out;
    }

    const Exponents& lm(std::size_t i) const { return polys_[i].front().e; }

    TPoly spoly(const Pair& p) const {
        const TPoly& f = polys_[p.i];
        const TPoly& g = polys_[p.j];
        TPoly left = mul(f, TPoly{{quotient(p.lcm, f.front().e), Rational(1)}}, cmp_);
        return sub_mul(left, 0, Rational(1) / g.front().c * f.front().c, quotient(p.lcm, g.front().e), g, cmp_);
    }

    void add(TPoly h) {
        const std::size_t hi = polys_.size();
        polys_.push_back(std::move(h));
        const Exponents& lh = lm(hi);

        // Gebauer–Möller update.
        std::vector<std::size_t> cand = active_;
        std::vector<std::size_t> kept;
        for (std::size_t k = 0; k < cand.size(); ++k) {
            std::size_t g = cand[k];
            if (coprime(lm(g), lh)) {
                kept.push_back(g);
                continue;
            }
            Exponents l = lcm_exponents(lm(g), lh);
            bool redundant = false;
            for (std::size_t k2 = k + 1; k2 < cand.size() && !redundant; ++k2)
                redundant = divides(lcm_exponents(lm(cand[k2]), lh), l);
            for (std::size_t g2 : kept) {
                if (redundant) break;
                redundant = divides(lcm_exponents(lm(g2), lh), l);
            }
            if (!redundant) kept.push_back(g);
        }
        std::vector<Pair> next;
        for (auto& p : pairs_) {
            bool drop = divides(lh, p.lcm) && lcm_exponents(lm(p.i), lh) != p.lcm &&
                        lcm_exponents(lm(p.j), lh) != p.lcm;
            if (!drop) next.push_back(std::move(p));
        }
        for (std::size_t g : kept) {
            if (coprime(lm(g), lh)) continue;
            Exponents l = lcm_exponents(lm(g), lh);
            std::uint64_t d = degree(l);
            next.push_back({g, hi, std::move(l), d});
        }
        pairs_ = std::move(next);
        std::erase_if(active_, [&](std::size_t g) { return divides(lh, lm(g)); });
        active_.push_back(hi);
    }

    std::vector<MultiPoly> finalize() {
        std::vector<TPoly> reduced;
        for (std::size_t k = 0; k < active_.size(); ++k) {
            std::vector<const TPoly*> others;
            for (std::size_t k2 = 0; k2 < active_.size(); ++k2)
                if (k2 != k) others.push_back(&polys_[active_[k2]]);
            const TPoly& g = polys_[active_[k]];
            TPoly tail(g.begin() + 1, g.end());
            TPoly rest = reduce_full(std::move(tail), others, cmp_, budget_);
            TPoly full;
            full.reserve(rest.size() + 1);
            full.push_back(g.front());
            for (auto& t : rest) full.push_back(std::move(t));
            make_monic(full);
            reduced.push_back(std::move(full));
        }
        std::sort(reduced.begin(), reduced.end(),
                  [&](const TPoly& a, const TPoly& b) { return cmp_.greater(a.front().e, b.front().e); });
        std::vector<MultiPoly> out;
        for (const auto& r : reduced) out.push_back(from_tpoly(r, ring_));
        return out;
    }

    RingPtr ring_;
    const MonomialComparator& cmp_;
    BudgetCounter budget_;
    std::vector<TPoly> polys_;
    std::vector<std::size_t> active_;
    std::vector<Pair> pairs_;
};

}  // namespace

// ---------------------------------------------------------------- GroebnerBasis

GroebnerBasis::GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<MultiPoly> gens)
    : ring_(std::move(ring)), order_(std::move(order)), gens_(std::move(gens)) {
    MonomialComparator cmp(ring_, order_);
    for (const auto& g : gens_) {
        check_ring(ring_, g.ring());
        const Exponents* best = nullptr;
        for (const auto& [e, c] : g.terms())
            if (!best || cmp.greater(e, *best)) best = &e;
        if (!best) throw DomainError("zero polynomial in a Groebner basis");
        leading_.push_back(*best);
    }
}

bool GroebnerBasis::is_unit() const { return gens_.size() == 1 && gens_[0].is_constant(); }

bool GroebnerBasis::is_empty_over_parameters() const {
    return std::any_of(gens_.begin(), gens_.end(), [](const MultiPoly& g) { return g.is_parameter_constant(); });
}

bool GroebnerBasis::contains(const MultiPoly& f) const { return pseudo_normal_form(f, *this).remainder.is_zero(); }

std::string GroebnerBasis::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + "]";
}

std::uint64_t GroebnerBasis::digest() const {
    std::uint64_t h = 1469598103934665603ull;
    std::string text = order_.to_string() + ":" + to_string();
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring_, b.ring_) && a.order_ == b.order_ && a.gens_ == b.gens_;
}

GroebnerBasis groebner(const RingPtr& ring, const std::vector<MultiPoly>& gens, const MonomialOrder& order,
                       std::size_t budget) {
    for (const auto& g : gens) check_ring(ring, g.ring());
    MonomialComparator cmp(ring, order);
    Buchberger engine(ring, cmp, budget);
    return GroebnerBasis(ring, order, engine.run(gens));
}

GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const MonomialOrder& order, std::size_t budget) {
    if (gens.empty() || !gens.front().ring()) throw DomainError("groebner: empty generator list has no ring");
    return groebner(gens.front().ring(), gens, order, budget);
}

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb, std::size_t budget) {
    check_ring(f.ring() ? f.ring() : gb.ring(), gb.ring());
    MonomialComparator cmp(gb.ring(), gb.order());
    std::vector<TPoly> basis;
    for (const auto& g : gb.generators()) basis.push_back(to_tpoly(g, cmp));
    std::vector<const TPoly*> reducers;
    for (const auto& b : basis) reducers.push_back(&b);
    BudgetCounter counter(budget);
    return from_tpoly(reduce_full(to_tpoly(f, cmp), reducers, cmp, counter), gb.ring());
}

namespace {

bool same_geometric_part(const Exponents& a, const Exponents& b, std::size_t ng) {
    for (std::size_t i = 0; i < ng; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Exponents geometric_part(const Exponents& e, std::size_t ng) {
    Exponents out(e.size(), 0);
    for (std::size_t i = 0; i < ng; ++i) out[i] = e[i];
    return out;
}

Exponents parameter_part(const Exponents& e, std::size_t ng) {
    Exponents out = e;
    for (std::size_t i = 0; i < ng; ++i) out[i] = 0;
    return out;
}

/// Leading coefficient of g viewed as a polynomial in the geometric variables.
TPoly leading_coefficient_in_geometric(const TPoly& g, std::size_t ng) {
    TPoly out;
    for (const auto& t : g) {
        if (!same_geometric_part(t.e, g.front().e, ng)) break;
        out.push_back({parameter_part(t.e, ng), t.c});
    }
    return out;
}

}  // namespace

PseudoRemainder pseudo_normal_form(const MultiPoly& f, const GroebnerBasis& gb, std::size_t budget) {
    const RingPtr& ring = gb.ring();
    if (f.ring()) check_ring(f.ring(), ring);
    const std::size_t ng = ring->num_geometric();
    MonomialComparator cmp(ring, gb.order());
    BudgetCounter counter(budget);

    struct Reducer {
        TPoly poly;
        Exponents lead_geo;
        TPoly lead_coeff;
        bool rational_lead;
    };
    std::vector<Reducer> reducers;
    for (const auto& g : gb.generators()) {
        Reducer r;
        r.poly = to_tpoly(g, cmp);
        r.lead_geo = geometric_part(r.poly.front().e, ng);
        r.lead_coeff = leading_coefficient_in_geometric(r.poly, ng);
        r.rational_lead = r.lead_coeff.size() == 1 && degree(r.lead_coeff.front().e) == 0;
        reducers.push_back(std::move(r));
    }

    TPoly work = to_tpoly(f, cmp);
    TPoly rem;
    TPoly multiplier{{Exponents(ring->size(), 0), Rational(1)}};
    while (!work.empty()) {
        const Exponents alpha = geometric_part(work.front().e, ng);
        std::size_t group_end = 0;
        while (group_end < work.size() && same_geometric_part(work[group_end].e, alpha, ng)) ++group_end;
        const Reducer* hit = nullptr;
        for (const auto& r : reducers)
            if (divides(r.lead_geo, alpha)) {
                hit = &r;
                break;
            }
        if (!hit) {
            for (std::size_t k = 0; k < group_end; ++k) rem.push_back(std::move(work[k]));
            work.erase(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(group_end));
            continue;
        }
        counter.spend();
        const Exponents shift = quotient(alpha, hit->lead_geo);
        // coefficient of x^alpha, as a polynomial in the parameters, times x^shift
        TPoly factor;
        for (std::size_t k = 0; k < group_end; ++k)
            factor.push_back({add_exponents(parameter_part(work[k].e, ng), shift), work[k].c});
        if (hit->rational_lead) {
            TPoly sub = mul(scale(factor, Rational(1) / hit->lead_coeff.front().c), hit->poly, cmp);
            work = sub_mul(work, 0, Rational(1), Exponents(ring->size(), 0), sub, cmp);
        } else {
            TPoly left = mul(hit->lead_coeff, work, cmp);
            TPoly sub = mul(factor, hit->poly, cmp);
            work = sub_mul(left, 0, Rational(1), Exponents(ring->size(), 0), sub, cmp);
            rem = mul(hit->lead_coeff, rem, cmp);
            multiplier = mul(hit->lead_coeff, multiplier, cmp);
        }
    }
    return {from_tpoly(multiplier, ring), from_tpoly(rem, ring)};
}

GroebnerBasis eliminate(const std::vector<MultiPoly>& gens, const std::vector<std::string>& drop,
                        std::size_t budget) {
    if (gens.empty() || !gens.front().ring()) throw DomainError("eliminate: empty generator list has no ring");
    const RingPtr& ring = gens.front().ring();
    std::vector<std::size_t> drop_idx;
    for (const auto& d : drop) {
        std::size_t i = ring->require(d);
        if (ring->is_param(i)) throw DomainError("cannot eliminate parameter " + d);
        drop_idx.push_back(i);
    }
    GroebnerBasis full = groebner(ring, gens, MonomialOrder::elimination(drop), budget);
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < ring->size(); ++i)
        if (std::find(drop_idx.begin(), drop_idx.end(), i) == drop_idx.end()) keep.push_back(ring->name(i));
    RingPtr sub = subring(ring, keep);
    std::vector<MultiPoly> kept;
    for (const auto& g : full.generators()) {
        bool free_of_dropped =
            std::none_of(drop_idx.begin(), drop_idx.end(), [&](std::size_t i) { return g.involves(i); });
        if (free_of_dropped) kept.push_back(embed(g, sub));
    }
    MonomialComparator cmp(sub, MonomialOrder::grevlex());
    auto lead = [&](const MultiPoly& p) {
        const Exponents* best = nullptr;
        for (const auto& [e, c] : p.terms())
            if (!best || cmp.greater(e, *best)) best = &e;
        return *best;
    };
    std::sort(kept.begin(), kept.end(),
              [&](const MultiPoly& a, const MultiPoly& b) { return cmp.greater(lead(a), lead(b)); });
    return GroebnerBasis(sub, MonomialOrder::grevlex(), std::move(kept));
}

std::size_t max_independent_set(const std::vector<std::uint64_t>& supports, std::size_t nvars) {
    if (nvars > 64) throw DomainError("dimension search supports at most 64 variables");
    std::size_t best = 0;
    auto admissible = [&](std::uint64_t set) {
        for (auto s : supports)
            if ((s & ~set) == 0) return false;
        return true;
    };
    auto dfs = [&](auto&& self, std::size_t var, std::uint64_t set, std::size_t size) -> void {
        if (size + (nvars - var) <= best) return;
        if (var == nvars) {
            best = size;
            return;
        }
        std::uint64_t with = set | (std::uint64_t{1} << var);
        if (admissible(with)) self(self, var + 1, with, size + 1);
        self(self, var + 1, set, size);
    };
    if (!admissible(0)) return 0;
    dfs(dfs, 0, 0, 0);
    return best;
}

std::optional<std::size_t> ideal_dimension(const GroebnerBasis& gb) {
    if (gb.is_empty_over_parameters()) return std::nullopt;
    const std::size_t ng = gb.ring()->num_geometric();
    // Under the parameter-last block order the geometric parts of the leading
    // monomials generate the initial ideal over Q(params).
    std::vector<std::uint64_t> supports;
    for (const auto& e : gb.leading_monomials()) {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < ng; ++i)
            if (e[i] != 0) s |= std::uint64_t{1} << i;
        supports.push_back(s);
    }
    return max_independent_set(supports, ng);
}

}  // namespace expfield
