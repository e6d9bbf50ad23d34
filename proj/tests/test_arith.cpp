#include "doctest.h"

#include <random>

#include "expfield/arith.hpp"

using namespace expfield;

namespace {

// Cofactor expansion; independent of the Bareiss routine under test.
Integer cofactor_det(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Integer total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m(0, c) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, jj = 0; j < n; ++j) {
                if (j == c) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        Integer term = m(0, c) * cofactor_det(minor);
        total += (c % 2 == 0) ? term : Integer(-term);
    }
    return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// gcd of all k×k minors (the k-th determinantal divisor).
Integer minor_gcd(const IntMatrix& m, std::size_t k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
        for (const auto& c : cs) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(r[i], c[j]);
            g = gcd(g, cofactor_det(sub));
        }
    return g;
}

IntMatrix random_int_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

bool is_row_hermite(const IntMatrix& h) {
    std::size_t last_pivot = 0;
    bool seen_zero_row = false;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t p = 0;
        while (p < h.cols() && h(i, p) == 0) ++p;
        if (p == h.cols()) {
            seen_zero_row = true;
            continue;
        }
        if (seen_zero_row) return false;
        if (i > 0 && p <= last_pivot) return false;
        if (h(i, p) <= 0) return false;
        for (std::size_t k = 0; k < i; ++k)
            if (h(k, p) < 0 || h(k, p) >= h(i, p)) return false;
        last_pivot = p;
    }
    return true;
}

}  // namespace

TEST_CASE("rational normal form") {
    Rational a(Integer(6), Integer(-4));
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK(Rational::parse("-3/2") == a);
    CHECK(Rational::parse("4/2") == Rational(2));
    CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
    CHECK_THROWS_AS(Rational::parse("x"), DomainError);
    CHECK((Rational(1) / Rational(3) + Rational(1) / Rational(6)) == Rational(Integer(1), Integer(2)));
}

TEST_CASE("rref examples") {
    auto r = rref(RatMatrix::identity(2));
    CHECK(r.reduced == RatMatrix::identity(2));
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.rank == 2);

    r = rref(RatMatrix{{1, 2}, {2, 4}});
    CHECK(r.reduced == RatMatrix{{1, 2}, {0, 0}});
    CHECK(r.rank == 1);

    r = rref(RatMatrix(2, 2));
    CHECK(r.reduced.is_zero());
    CHECK(r.rank == 0);
}

TEST_CASE("rref properties on random matrices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-4, 4), sz(1, 4);
    for (int t = 0; t < 100; ++t) {
        RatMatrix m(static_cast<std::size_t>(sz(rng)), static_cast<std::size_t>(sz(rng)));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = Rational(Integer(d(rng)), Integer(2));
        auto once = rref(m);
        CHECK(rref(once.reduced).reduced == once.reduced);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("q_linear_dependencies examples") {
    CHECK(q_linear_dependencies({{1, 0}, {0, 1}}).empty());

    auto deps = q_linear_dependencies({{1, 2}, {2, 4}});
    REQUIRE(deps.size() == 1);
    CHECK(primitive_integer_vector(deps[0]) == std::vector<Integer>{2, -1});

    // (1,1,0) + (0,1,1) - (1,2,1) = 0, solved by hand.
    deps = q_linear_dependencies({{1, 1, 0}, {0, 1, 1}, {1, 2, 1}});
    REQUIRE(deps.size() == 1);
    CHECK(primitive_integer_vector(deps[0]) == std::vector<Integer>{1, 1, -1});

    CHECK_THROWS_AS(q_linear_dependencies({{1, 2}, {1}}), DomainError);
}

TEST_CASE("q_linear_dependencies annihilate and complement the rank") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-3, 3), count(1, 5), len(1, 4);
    for (int t = 0; t < 100; ++t) {
        const std::size_t k = static_cast<std::size_t>(count(rng));
        const std::size_t l = static_cast<std::size_t>(len(rng));
        std::vector<std::vector<Rational>> vs(k, std::vector<Rational>(l));
        RatMatrix rows(k, l);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < l; ++j) rows(i, j) = vs[i][j] = d(rng);
        auto deps = q_linear_dependencies(vs);
        for (const auto& lam : deps)
            for (std::size_t j = 0; j < l; ++j) {
                Rational s = 0;
                for (std::size_t i = 0; i < k; ++i) s += lam[i] * vs[i][j];
                CHECK(s.is_zero());
            }
        CHECK(deps.size() + rank(rows) == k);
    }
}

TEST_CASE("hermite normal form examples") {
    auto id = hermite_normal_form(IntMatrix::identity(3));
    CHECK(id.h == IntMatrix::identity(3));
    CHECK(id.u == IntMatrix::identity(3));

    IntMatrix m{{2, 4}, {1, 3}};
    auto hf = hermite_normal_form(m);
    CHECK(hf.u * m == hf.h);
    CHECK(abs(cofactor_det(hf.u)) == 1);
    CHECK(hf.h(0, 0) == 1);
    CHECK(hf.h(1, 1) == 2);
    CHECK(hf.h(1, 0) == 0);

    auto z = hermite_normal_form(IntMatrix(2, 3));
    CHECK(z.h.is_zero());
    CHECK(z.u == IntMatrix::identity(2));
}

TEST_CASE("smith normal form examples") {
    auto id = smith_normal_form(IntMatrix::identity(2));
    CHECK(id.s == IntMatrix::identity(2));
    CHECK(id.u == IntMatrix::identity(2));
    CHECK(id.v == IntMatrix::identity(2));

    // invariant factors of diag(2,3): gcd = 1, lcm = 6
    auto d = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
    CHECK(d.s == IntMatrix{{1, 0}, {0, 6}});

    auto z = smith_normal_form(IntMatrix{{0}});
    CHECK(z.s == IntMatrix{{0}});
}

TEST_CASE("lattice normal forms on random matrices") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> sz(1, 4);
    for (int t = 0; t < 60; ++t) {
        IntMatrix m = random_int_matrix(rng, static_cast<std::size_t>(sz(rng)), static_cast<std::size_t>(sz(rng)), -9, 9);
        auto hf = hermite_normal_form(m);
        CHECK(hf.u * m == hf.h);
        CHECK(abs(determinant(hf.u)) == 1);
        CHECK(is_row_hermite(hf.h));

        auto sf = smith_normal_form(m);
        CHECK(sf.u * m * sf.v == sf.s);
        CHECK(abs(cofactor_det(sf.u)) == 1);
        CHECK(abs(cofactor_det(sf.v)) == 1);
        const std::size_t diag = std::min(m.rows(), m.cols());
        std::size_t r = 0;
        Integer prod = 1;
        for (std::size_t i = 0; i < diag; ++i) {
            if (i + 1 < diag && sf.s(i, i) != 0) CHECK(sf.s(i + 1, i + 1) % sf.s(i, i) == 0);
            if (sf.s(i, i) != 0) {
                ++r;
                prod *= sf.s(i, i);
                CHECK(prod == minor_gcd(m, r));
            }
        }
        CHECK(r == rank(to_rational(m)));
    }
}

TEST_CASE("determinants agree with cofactor expansion") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> sz(1, 5);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = static_cast<std::size_t>(sz(rng));
        IntMatrix m = random_int_matrix(rng, n, n, -5, 5);
        CHECK(determinant(m) == cofactor_det(m));
        CHECK(determinant(to_rational(m)) == Rational(cofactor_det(m)));
    }
}
