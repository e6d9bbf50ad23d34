#include "expfield/exppoly.hpp"

#include <algorithm>
#include <optional>

namespace expfield {

ExpPoly::ExpPoly(std::size_t arity, MultiPoly p) : arity_(arity), p_(std::move(p)) {
    if (!p_.ring()) throw DomainError("exponential polynomial without a ring");
    if (p_.ring()->num_geometric() != 2 * arity_)
        throw DomainError("ring of an arity-" + std::to_string(arity_) + " exponential polynomial needs " +
                          std::to_string(2 * arity_) + " geometric variables");
}

namespace {

void check_compatible(const ExpPoly& a, const ExpPoly& b) {
    if (a.arity() != b.arity()) throw DomainError("arity mismatch");
    if (!same_ring(a.ring(), b.ring())) throw DomainError("exponential polynomials over different rings");
}

}  // namespace

ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) {
    check_compatible(a, b);
    return ExpPoly(a.arity_, a.p_ + b.p_);
}

ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) {
    check_compatible(a, b);
    return ExpPoly(a.arity_, a.p_ - b.p_);
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    check_compatible(a, b);
    return ExpPoly(a.arity_, a.p_ * b.p_);
}

ExpPoly operator*(const Rational& c, const ExpPoly& a) { return ExpPoly(a.arity_, c * a.p_); }

Term poly_to_term(const MultiPoly& p, const std::vector<Term>& var_terms) {
    if (p.is_zero()) return Term::num(Rational(0));
    MonomialComparator cmp(p.ring(), MonomialOrder::grevlex());
    std::vector<const MultiPoly::TermMap::value_type*> sorted;
    for (const auto& t : p.terms()) sorted.push_back(&t);
    std::sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) { return cmp.greater(a->first, b->first); });

    std::optional<Term> acc;
    for (const auto* t : sorted) {
        const Rational& c = t->second;
        std::optional<Term> mono;
        for (std::size_t i = 0; i < t->first.size(); ++i) {
            if (t->first[i] == 0) continue;
            Term f = t->first[i] == 1 ? var_terms[i] : Term::pow(var_terms[i], t->first[i]);
            mono = mono ? Term::mul(std::move(*mono), std::move(f)) : std::move(f);
        }
        const Rational mag = abs(c);
        Term piece = !mono ? Term::num(acc ? mag : c)
                     : mag.is_one() ? std::move(*mono)
                                    : Term::mul(Term::num(acc ? mag : c), std::move(*mono));
        if (!acc) {
            // A leading -1 coefficient on a monomial becomes a negation.
            acc = (mono && c == Rational(-1)) ? Term::neg(std::move(piece)) : std::move(piece);
        } else {
            acc = c.sign() < 0 ? Term::sub(std::move(*acc), std::move(piece)) : Term::add(std::move(*acc), std::move(piece));
        }
    }
    return std::move(*acc);
}

Term ExpPoly::to_term() const {
    const Ring& r = *ring();
    std::vector<Term> vars;
    vars.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i >= arity_ && i < 2 * arity_) vars.push_back(Term::exp(Term::var(r.name(i - arity_))));
        else vars.push_back(Term::var(r.name(i)));
    }
    return poly_to_term(p_, vars);
}

std::string ExpPoly::to_string() const { return render(to_term()); }

RingPtr exp_ring(std::size_t n, const std::vector<std::string>& params) {
    std::vector<std::string> geo;
    for (std::size_t i = 1; i <= n; ++i) geo.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) geo.push_back("y" + std::to_string(i));
    return Ring::make(geo, params);
}

namespace {

class TermToPoly {
public:
    TermToPoly(std::size_t arity, const RingPtr& ring) : n_(arity), ring_(ring) {}

    MultiPoly convert(const Term& t) const {
        switch (t.kind) {
            case Term::Kind::Num: return MultiPoly::constant(ring_, t.value);
            case Term::Kind::Var: {
                auto idx = ring_->index_of(t.name);
                if (!idx) throw DomainError("unknown variable: " + t.name);
                return MultiPoly::variable(ring_, *idx);
            }
            case Term::Kind::Add: return convert(t.args[0]) + convert(t.args[1]);
            case Term::Kind::Sub: return convert(t.args[0]) - convert(t.args[1]);
            case Term::Kind::Neg: return -convert(t.args[0]);
            case Term::Kind::Mul: return convert(t.args[0]) * convert(t.args[1]);
            case Term::Kind::Pow: return convert(t.args[0]).pow(t.exponent);
            case Term::Kind::Exp: return exponential(t.args[0]);
        }
        return MultiPoly(ring_);
    }

private:
    // exp of a nonnegative integer combination of the X variables.
    MultiPoly exponential(const Term& arg) const {
        MultiPoly lin = convert(arg);
        Exponents e(ring_->size(), 0);
        for (const auto& [mono, c] : lin.terms()) {
            std::size_t var = ring_->size();
            for (std::size_t i = 0; i < mono.size(); ++i) {
                if (mono[i] == 0) continue;
                if (var != ring_->size() || mono[i] != 1 || i >= n_) var = ring_->size() + 1;
                else var = i;
            }
            if (var >= ring_->size() || !c.is_integer() || c.sign() < 0)
                throw DomainError("exp(...) must be applied to a nonnegative integer combination of the variables");
            e[n_ + var] = static_cast<std::uint32_t>(c.numerator().get_ui());
        }
        return MultiPoly::monomial(ring_, e);
    }

    std::size_t n_;
    RingPtr ring_;
};

}  // namespace

ExpPoly parse_exppoly(std::string_view text, std::size_t arity, const RingPtr& ring) {
    Term t = parse_term(text);
    return ExpPoly(arity, TermToPoly(arity, ring).convert(t));
}

ExpPoly exp_derivative(const ExpPoly& f, std::size_t i) {
    if (i < 1 || i > f.arity())
        throw DomainError("derivative index " + std::to_string(i) + " out of range 1.." + std::to_string(f.arity()));
    const std::size_t x = i - 1, y = f.arity() + i - 1;
    const MultiPoly& p = f.poly();
    return ExpPoly(f.arity(), partial_derivative(p, x) + MultiPoly::variable(p.ring(), y) * partial_derivative(p, y));
}

namespace {

ExpPoly cofactor_determinant(const std::vector<std::vector<ExpPoly>>& m, std::vector<std::size_t>& cols,
                             std::size_t row) {
    if (row == m.size()) return ExpPoly(m[0][0].arity(), MultiPoly::constant(m[0][0].ring(), Rational(1)));
    ExpPoly total(m[0][0].arity(), MultiPoly(m[0][0].ring()));
    int sign = 1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t c = cols[k];
        if (!m[row][c].poly().is_zero()) {
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
            ExpPoly minor = cofactor_determinant(m, cols, row + 1);
            cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
            ExpPoly term = m[row][c] * minor;
            total = sign > 0 ? total + term : total - term;
        }
        sign = -sign;
    }
    return total;
}

void check_system(const std::vector<ExpPoly>& fs) {
    if (fs.empty()) throw DomainError("empty system");
    for (const auto& f : fs) check_compatible(fs.front(), f);
}

}  // namespace

ExpPoly jacobian_determinant(const std::vector<ExpPoly>& fs) {
    check_system(fs);
    const std::size_t n = fs.size();
    if (fs.front().arity() != n)
        throw DomainError("a Jacobian needs as many equations (" + std::to_string(n) + ") as variables (" +
                          std::to_string(fs.front().arity()) + ")");
    std::vector<std::vector<ExpPoly>> m;
    for (const auto& f : fs) {
        std::vector<ExpPoly> row;
        for (std::size_t j = 1; j <= n; ++j) row.push_back(exp_derivative(f, j));
        m.push_back(std::move(row));
    }
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = j;
    return cofactor_determinant(m, cols, 0);
}

KhovanskiiSystem khovanskii_system(const std::vector<ExpPoly>& fs) {
    ExpPoly j = jacobian_determinant(fs);
    return KhovanskiiSystem(fs, std::move(j));
}

Formula chi_formula(const std::vector<ExpPoly>& fs) {
    ExpPoly j = jacobian_determinant(fs);
    std::vector<Formula> parts;
    for (const auto& f : fs) parts.push_back(Formula::eq(f.to_term(), Term::num(Rational(0))));
    parts.push_back(Formula::negation(Formula::eq(j.to_term(), Term::num(Rational(0)))));
    return Formula::conj(std::move(parts));
}

std::string to_string(WitnessVerdict v) {
    switch (v) {
        case WitnessVerdict::Witness: return "witness";
        case WitnessVerdict::EquationsFail: return "equations-fail";
        case WitnessVerdict::JacobianVanishes: return "jacobian-vanishes";
    }
    return "";
}

}  // namespace expfield
