#include "expfield/arith.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace expfield {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw DomainError("not a rational literal: " + s);
        return Rational(Integer(strip_plus(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw DomainError("not a rational literal: " + s);
    return Rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::size_t hash_value(const Rational& r) {
    return std::hash<std::string>{}(r.to_string());
}

RrefResult rref(const RatMatrix& m) {
    RrefResult out{m, {}, 0};
    RatMatrix& a = out.reduced;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        a.swap_rows(piv, row);
        Rational inv = Rational(1) / a(row, col);
        for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a(r, col).is_zero()) continue;
            Rational f = a(r, col);
            for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.rank = row;
    return out;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank; }

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

std::vector<std::vector<Rational>> q_linear_dependencies(const std::vector<std::vector<Rational>>& vectors) {
    if (vectors.empty()) return {};
    const std::size_t len = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != len) throw DomainError("q_linear_dependencies: vectors of different lengths");
    const std::size_t k = vectors.size();
    // Columns are the input vectors; the kernel of this matrix is the dependency space.
    RatMatrix a(len, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < len; ++i) a(i, j) = vectors[j][i];
    RrefResult r = rref(a);
    std::vector<bool> is_pivot(k, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < k; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> lambda(k);
        lambda[f] = Rational(1);
        for (std::size_t pr = 0; pr < r.pivots.size(); ++pr) lambda[r.pivots[pr]] = -r.reduced(pr, f);
        basis.push_back(std::move(lambda));
    }
    return basis;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, x.denominator());
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer z = x.numerator() * (l / x.denominator());
        g = gcd(g, z);
        out.push_back(z);
    }
    if (g == 0) return out;
    int sgn_first = 0;
    for (const auto& z : out)
        if (z != 0) { sgn_first = sgn(z); break; }
    for (auto& z : out) {
        z /= g;
        if (sgn_first < 0) z = -z;
    }
    return out;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t c = 0; c < m.cols(); ++c) m(target, c) += factor * m(source, c);
}

void add_col_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, target) += factor * m(r, source);
}

void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
    HermiteForm out{m, IntMatrix::identity(m.rows())};
    IntMatrix& h = out.h;
    IntMatrix& u = out.u;
    std::size_t row = 0;
    for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t i = row; i < h.rows(); ++i) {
                if (h(i, col) == 0) continue;
                if (best == h.rows() || abs(h(i, col)) < abs(h(best, col))) best = i;
            }
            if (best == h.rows()) break;
            h.swap_rows(best, row);
            u.swap_rows(best, row);
            bool cleared = true;
            for (std::size_t i = row + 1; i < h.rows(); ++i) {
                if (h(i, col) == 0) continue;
                Integer q = trunc_div(h(i, col), h(row, col));
                add_row_multiple(h, i, row, -q);
                add_row_multiple(u, i, row, -q);
                if (h(i, col) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h(row, col) == 0) continue;
        if (h(row, col) < 0) {
            negate_row(h, row);
            negate_row(u, row);
        }
        for (std::size_t i = 0; i < row; ++i) {
            Integer q = floor_div(h(i, col), h(row, col));
            add_row_multiple(h, i, row, -q);
            add_row_multiple(u, i, row, -q);
        }
        ++row;
    }
    return out;
}

SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    IntMatrix& s = out.s;
    IntMatrix& u = out.u;
    IntMatrix& v = out.v;
    const std::size_t diag = std::min(s.rows(), s.cols());
    for (std::size_t t = 0; t < diag; ++t) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pr = s.rows(), pc = s.cols();
        for (std::size_t i = t; i < s.rows(); ++i)
            for (std::size_t j = t; j < s.cols(); ++j)
                if (s(i, j) != 0 && (pr == s.rows() || abs(s(i, j)) < abs(s(pr, pc)))) {
                    pr = i;
                    pc = j;
                }
        if (pr == s.rows()) break;
        s.swap_rows(t, pr);
        u.swap_rows(t, pr);
        s.swap_cols(t, pc);
        v.swap_cols(t, pc);
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                if (s(i, t) == 0) continue;
                Integer q = trunc_div(s(i, t), s(t, t));
                add_row_multiple(s, i, t, -q);
                add_row_multiple(u, i, t, -q);
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                if (s(t, j) == 0) continue;
                Integer q = trunc_div(s(t, j), s(t, t));
                add_col_multiple(s, j, t, -q);
                add_col_multiple(v, j, t, -q);
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A remainder is smaller than the pivot; move it into pivot position.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < s.rows(); ++i)
                    if (s(i, t) != 0 && abs(s(i, t)) < abs(s(bi, bj))) { bi = i; bj = t; }
                for (std::size_t j = t + 1; j < s.cols(); ++j)
                    if (s(t, j) != 0 && abs(s(t, j)) < abs(s(bi, bj))) { bi = t; bj = j; }
                s.swap_rows(t, bi);
                u.swap_rows(t, bi);
                s.swap_cols(t, bj);
                v.swap_cols(t, bj);
                continue;
            }
            std::size_t bad = s.rows();
            for (std::size_t i = t + 1; i < s.rows() && bad == s.rows(); ++i)
                for (std::size_t j = t + 1; j < s.cols(); ++j)
                    if (s(i, j) % s(t, t) != 0) { bad = i; break; }
            if (bad == s.rows()) break;
            add_row_multiple(s, t, bad, Integer(1));
            add_row_multiple(u, t, bad, Integer(1));
        }
        if (s(t, t) < 0) {
            negate_row(s, t);
            negate_row(u, t);
        }
    }
    return out;
}

Integer determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
    RatMatrix a = m;
    Rational det = 1;
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k).is_zero()) ++p;
        if (p == n) return Rational(0);
        if (p != k) {
            a.swap_rows(p, k);
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            Rational f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

}  // namespace expfield
