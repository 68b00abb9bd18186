#include "doctest.h"

#include "abm/abalg.hpp"
#include "abm/errors.hpp"
#include "support.hpp"

using namespace abm;
using namespace abm::testing;

namespace {

constexpr int N = 16;

AbOperator A() { return op_a(N); }
AbOperator B() { return op_b(N); }
AbOperator C(const Rational& c) { return op_scalar(c, N); }

AbOperator left(std::initializer_list<std::tuple<int, int, int>> t, int order = N) {
    AbOperator x(order);
    for (auto [p, q, c] : t) x.add(p, q, c);
    return x;
}

RightNormalForm right(std::initializer_list<std::tuple<int, int, int>> t, int order = N) {
    RightNormalForm x{order, {}};
    for (auto [p, q, c] : t) x.add(p, q, c);
    return x;
}

TruncSeries monomial_z(int r, int order) { return TruncSeries::monomial(1, r, order); }

}  // namespace

TEST_CASE("gamma coefficients") {
    CHECK(gamma_coeff(1, 1, 1) == 1);
    CHECK(gamma_coeff(2, 1, 1) == 2);
    CHECK(gamma_coeff(2, 1, 2) == 2);
    CHECK(gamma_coeff(3, 2, 4) == 0);
    for (int p = 0; p < 8; ++p) {
        CHECK(gamma_coeff(p, 0, 0) == 1);
        CHECK(gamma_coeff(p, 0, 1) == 0);
    }
    for (int p = 0; p <= 12; ++p)
        for (int q = 1; q <= 12; ++q)
            for (int j = 1; j <= 12; ++j) {
                CHECK(gamma_coeff(p + 1, q, j) == gamma_coeff(p, q, j) + (q + j - 1) * gamma_coeff(p, q, j - 1));
                CHECK(gamma_coeff(p + 1, q, j) == gamma_coeff(p, q, j) + q * gamma_coeff(p, q + 1, j - 1));
            }
}

TEST_CASE("normal form conversions") {
    CHECK(to_right(left({{1, 1, 1}})) == right({{1, 1, 1}, {0, 2, 1}}));
    CHECK(to_right(left({{5, 0, 1}})) == right({{5, 0, 1}}));
    CHECK(to_right(left({{2, 1, 1}})) == right({{2, 1, 1}, {1, 2, 2}, {0, 3, 2}}));
    CHECK(to_left(right({{1, 1, 1}})) == left({{1, 1, 1}, {0, 2, -1}}));
    CHECK(to_left(right({{0, 4, 1}})) == left({{0, 4, 1}}));
    CHECK(to_left(right({{2, 1, 1}})) == left({{2, 1, 1}, {1, 2, -2}, {0, 3, 2}}));
}

TEST_CASE("normal forms agree with the rewriting oracle") {
    for (int t = 0; t < 40; ++t) {
        const int order = 9;
        AbOperator x = rand_operator(order, 4, 5, 3);
        auto expect_right = rewrite(words_of(x.terms, true), true, order);
        CHECK(words_of(to_right(x).terms, false) == expect_right);
        RightNormalForm y{order, {}};
        for (const auto& [e, c] : rand_operator(order, 4, 5, 3).terms) y.add(e.first, e.second, c);
        auto expect_left = rewrite(words_of(y.terms, false), false, order);
        CHECK(words_of(to_left(y).terms, true) == expect_left);
    }
    for (int t = 0; t < 20; ++t) {
        AbOperator x = rand_operator(N, 6, 8, 6);
        CHECK(to_left(to_right(x)) == x);
    }
}

TEST_CASE("products") {
    // (a-b)^p = a^p - p b a^{p-1} in right normal form
    for (int p = 1; p <= 6; ++p) {
        AbOperator lhs = power(A() - B(), p);
        CHECK(to_right(lhs) == right({{p, 0, 1}, {p - 1, 1, -p}}));
    }
    AbOperator x = rand_operator(N, 4);
    CHECK(x * C(1) == x);
    CHECK(C(1) * x == x);
    for (int q = 0; q <= 4; ++q)
        for (int p = 0; p <= 4; ++p)
            CHECK(power(B(), q) * power(A() + Rational(q) * B(), p) == power(A(), p) * power(B(), q));
    for (int t = 0; t < 15; ++t) {
        auto u = rand_operator(N, 3), v = rand_operator(N, 3), w = rand_operator(N, 3);
        CHECK((u * v) * w == u * (v * w));
    }
    // Products agree with the rewriting oracle on concatenated words.
    for (int t = 0; t < 20; ++t) {
        const int order = 8;
        auto u = rand_operator(order, 3, 4, 3), v = rand_operator(order, 3, 4, 3);
        WordPoly cat;
        for (const auto& [wu, cu] : words_of(u.terms, true))
            for (const auto& [wv, cv] : words_of(v.terms, true)) cat[wu + wv] += cu * cv;
        CHECK(words_of(to_right(u * v).terms, false) == rewrite(cat, true, order));
    }
    CHECK_THROWS_AS(op_a(4) * op_a(5), OrderMismatch);
}

TEST_CASE("reduction identities") {
    for (int m = 0; m <= 5; ++m) {
        Rational lam(7, 3);
        auto bm = power(B(), m);
        CHECK(bm * op_linear(lam - m, N) == op_linear(lam, N) * bm);
        CHECK(op_linear(lam + m, N) * bm == bm * op_linear(lam, N));
    }
}

TEST_CASE("binomial shift") {
    CHECK(binomial_shift(-1, 3, N) == to_left(right({{3, 0, 1}, {2, 1, -3}})));
    CHECK(binomial_shift(0, 5, N) == power(A(), 5));
    for (int q = 2; q <= 4; ++q)
        CHECK(binomial_shift(1, q, N) == power(A(), q - 1) * (A() + Rational(q) * B()));
    for (int p = 0; p <= 5; ++p) {
        Rational x(-5, 2);
        CHECK(binomial_shift(x, p, N) == power(A() + x * B(), p));
    }
}

TEST_CASE("graded inversion") {
    const int m = 8;
    GradedOperator one_minus_a{m, {}};
    one_minus_a.add(0, 0, 1);
    one_minus_a.add(1, 0, -1);
    auto inv = invert_graded(one_minus_a);
    GradedOperator geo{m, {}};
    for (int p = 0; p < m; ++p) geo.add(p, 0, 1);
    CHECK(inv.terms == geo.terms);

    TruncSeries s = rand_unit(m);
    GradedOperator gs{m, {}};
    for (int q = 0; q < m; ++q) gs.add(0, q, s[q]);
    auto gi = invert_graded(gs);
    TruncSeries si = series_invert(s);
    GradedOperator expect{m, {}};
    for (int q = 0; q < m; ++q) expect.add(0, q, si[q]);
    CHECK(gi.terms == expect.terms);

    GradedOperator one_plus_a{m, {}};
    one_plus_a.add(0, 0, 1);
    one_plus_a.add(1, 0, 1);
    GradedOperator unit{m, {}};
    unit.add(0, 0, 1);
    CHECK(graded_mul(one_plus_a, invert_graded(one_plus_a)).terms == unit.terms);

    for (int t = 0; t < 10; ++t) {
        GradedOperator x{m, {}};
        for (const auto& [e, c] : rand_operator(m, 3, 6, 3).terms)
            if (e.first + e.second < m) x.add(e.first, e.second, c);
        x.terms.erase({0, 0});
        x.add(0, 0, rand_int(1, 3));
        auto y = invert_graded(x);
        CHECK(graded_mul(x, y).terms == unit.terms);
        CHECK(graded_mul(y, x).terms == unit.terms);
    }
    GradedOperator bad{m, {}};
    bad.add(1, 0, 1);
    CHECK_THROWS_AS(invert_graded(bad), NonUnit);
}

TEST_CASE("disc action") {
    const int order = 14;
    CHECK(act_on_disc(op_b(order), monomial_z(0, order)) == monomial_z(1, order));
    AbOperator comm = op_a(order) * op_b(order) - op_b(order) * op_a(order);
    AbOperator bb = power(op_b(order), 2);
    for (int r = 0; r <= 10; ++r) CHECK(act_on_disc(comm, monomial_z(r, order)) == act_on_disc(bb, monomial_z(r, order)));
    for (int t = 0; t < 20; ++t) {
        auto x = rand_operator(order, 3, 5, 4), y = rand_operator(order, 3, 5, 4);
        auto f = rand_series(order, 1);
        CHECK(act_on_disc(x * y, f) == act_on_disc(x, act_on_disc(y, f)));
    }
}

TEST_CASE("divide_linear") {
    auto d = divide_linear(power(A(), 2), 1);
    CHECK(d.Q == A() + B());
    CHECK(d.R == TruncSeries::monomial(2, 2, N));

    Rational lam(-3, 4);
    auto d2 = divide_linear(op_linear(lam, N), lam);
    CHECK(d2.Q == C(1));
    CHECK(d2.R.is_zero());

    TruncSeries s = rand_series(N);
    auto d3 = divide_linear(op_series(s), 2);
    CHECK(d3.Q.is_zero());
    CHECK(d3.R == s);

    for (int t = 0; t < 20; ++t) {
        Rational l = rand_rational();
        AbOperator x = rand_operator(N, 5, 8, 6);
        auto r = divide_linear(x, l);
        CHECK(r.Q * op_linear(l, N) + op_series(r.R) == x);
        CHECK(r.Q.a_degree() == (x.a_degree() > 0 ? x.a_degree() - 1 : -1));
        auto again = divide_linear(r.Q * op_linear(l, N) + op_series(r.R), l);
        CHECK(again.Q == r.Q);
        CHECK(again.R == r.R);
    }
}

TEST_CASE("divide_factored") {
    std::vector<LinearFactor> p2{{1, TruncSeries::constant(1, N)}, {2, TruncSeries::constant(1, N)}};
    AbOperator P = factored_product(p2, N);
    CHECK(P == op_linear(1, N) * op_linear(2, N));
    auto self = divide_factored(P, p2);
    CHECK(self.Q == C(1));
    CHECK(self.R.is_zero());

    auto sq = divide_factored(power(A(), 2), p2);
    CHECK(sq.Q == C(1));
    CHECK(sq.R.a_degree() <= 1);
    CHECK(sq.Q * P + sq.R == power(A(), 2));

    for (int t = 0; t < 15; ++t) {
        int k = rand_int(1, 3);
        std::vector<LinearFactor> fs;
        for (int j = 0; j < k; ++j) fs.push_back({rand_rational(), rand_unit(N)});
        AbOperator pk = factored_product(fs, N);
        AbOperator x = rand_operator(N, 5, 8, 5);
        auto r = divide_factored(x, fs);
        CHECK(r.R.a_degree() <= k - 1);
        CHECK(r.Q * pk + r.R == x);
        auto again = divide_factored(r.Q * pk + r.R, fs);
        CHECK(again.Q == r.Q);
        CHECK(again.R == r.R);
    }
    std::vector<LinearFactor> bad{{1, TruncSeries::monomial(1, 1, N)}};
    CHECK_THROWS_AS(divide_factored(power(A(), 2), bad), NonUnit);
}
