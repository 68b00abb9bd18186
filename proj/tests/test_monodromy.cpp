#include "doctest.h"

#include "abm/errors.hpp"
#include "abm/monodromy.hpp"
#include "support.hpp"

using namespace abm;
using namespace abm::testing;

namespace {

constexpr int N = 12;

}  // namespace

TEST_CASE("u_matrix examples") {
    Rational al(2, 3);
    QMatrix u = u_matrix(make_E(al, N), 2);
    QMatrix expect(2, 2);
    expect(0, 0) = al;
    expect(1, 1) = al + 1;
    CHECK(u == expect);
    QMatrix ux = u_matrix(make_xi(al, 1, N), 1);
    QMatrix ex(2, 2);
    ex(0, 0) = al; ex(1, 0) = 1; ex(1, 1) = al;
    CHECK(ux == ex);
    QMatrix th = rand_qmatrix(3, 3);
    CHECK(u_matrix(make_E_theta(th, N), 1) == th);
    CHECK_THROWS_AS(u_matrix(witness(al, 1, N), 2), NotSimplePole);
}

TEST_CASE("nilpotent part against the dense Jordan-Chevalley oracle") {
    QMatrix d(2, 2);
    d(0, 0) = Rational(1, 2); d(1, 1) = Rational(5, 2);
    CHECK(nilpotent_part(make_E_theta(d, N)).N.is_zero());
    auto xi = make_xi(Rational(1, 3), 2, N);
    SeriesMatrix nx = nilpotent_part(xi).N;
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) CHECK(nx(j, l) == TruncSeries::constant(l == j - 1 ? 1 : 0, N - 1));
    for (int t = 0; t < 12; ++t) {
        std::vector<std::vector<Rational>> spectra{
            {Rational(1, 2), Rational(1, 2), Rational(3, 2)},
            {Rational(1, 3), Rational(4, 3), Rational(7, 3)},
            {Rational(1, 2), Rational(3, 2), Rational(1, 3), Rational(1, 3)},
            {Rational(2), Rational(1), Rational(1)}};
        const auto& sp = spectra[t % spectra.size()];
        auto e = rand_simple_pole((int)sp.size(), N, sp);
        auto np = nilpotent_part(e);
        const int k = e.rank(), levels = 6;
        QMatrix nd = level_matrix(np.N, levels);
        CHECK(nd == nilpotent_part_dense(e, levels));
        QMatrix u = u_matrix(e, levels), bm = b_matrix(k, levels);
        CHECK(nd * u == u * nd);
        CHECK(nd * bm == bm * nd);
        CHECK(power(nd, k).is_zero());
        QMatrix s = u - nd;
        CHECK(charpoly(s) == charpoly(u));
        // u - N is semisimple: its minimal polynomial is squarefree.
        RatPoly mp = minpoly(s);
        CHECK(mp == squarefree_part(mp));
    }
}

TEST_CASE("filtration of Xi tensor V") {
    for (int n = 0; n <= 3; ++n)
        for (int v = 1; v <= 2; ++v) {
            auto xi = make_xi(Rational(1, 2), n, N);
            auto e = v == 1 ? xi : direct_sum(xi, xi);
            auto f = semisimple_filtration(e);
            CHECK(f.d == n + 1);
            CHECK(f.ranks == std::vector<int>(n + 1, v));
            for (int j = 1; j <= n + 1; ++j) {
                SeriesMatrix g(j * v, (n + 1) * v, f.order);
                for (int c = 0; c < v; ++c)
                    for (int i = 0; i < j; ++i) g(c * j + i, c * (n + 1) + i) = TruncSeries::constant(1, f.order);
                CHECK(same_lattice(f.steps[j - 1], Lattice(g)));
            }
        }
}

TEST_CASE("filtration basics") {
    QMatrix d(2, 2);
    d(0, 0) = Rational(1, 2); d(1, 1) = Rational(3, 2);
    CHECK(nilpotent_order(make_E_theta(d, N)) == 1);
    auto x1 = make_xi(Rational(1, 3), 1, N), x2 = make_xi(Rational(1, 4), 2, N);
    CHECK(nilpotent_order(direct_sum(x1, x2)) == 3);
    for (int p = 1; p <= 2; ++p) {
        auto w = witness(Rational(3, 2), p, N);
        auto f = semisimple_filtration(w);
        CHECK(f.d == 2);
        CHECK(f.ranks == std::vector<int>{1, 1});
    }
    for (int t = 0; t < 8; ++t) {
        auto e = rand_simple_pole(4, N, {Rational(1, 2), Rational(1, 2), Rational(3, 2), Rational(1, 3)});
        auto f = semisimple_filtration(e);
        for (std::size_t j = 1; j < f.ranks.size(); ++j) CHECK(f.ranks[j] <= f.ranks[j - 1]);
        auto np = nilpotent_part(e);
        // N(S_j) inside S_{j-1}
        for (std::size_t j = 1; j < f.steps.size(); ++j) {
            const Lattice& sj = f.steps[j];
            SeriesMatrix img = sj.generators * np.N.with_order(sj.order());
            CHECK(contains(f.steps[j - 1], Lattice(img)));
        }
        auto s = saturate(e);
        CHECK(s.codim == 0);
    }
}

TEST_CASE("filtration of submodules and saturations") {
    Rational al(1, 2);
    auto xi = make_xi(al, 1, N);
    // theme span(e_1, b e_0)
    SeriesMatrix g(2, 2, N);
    g(0, 1) = TruncSeries::constant(1, N);
    g(1, 0) = TruncSeries::monomial(1, 1, N);
    auto th = submodule(xi, Lattice(g));
    CHECK(nilpotent_order(th.module) == 2);
    CHECK(nilpotent_order(saturate(th.module).sharp) == 2);
    for (int t = 0; t < 5; ++t) {
        auto e = rand_simple_pole(3, N, {Rational(1, 3), Rational(1, 3), Rational(4, 3)});
        auto fe = semisimple_filtration(e);
        SeriesMatrix gens(4, 3, N);
        gens.set_block(0, 0, rand_series_matrix(1, 3, N));
        gens.set_block(1, 0, SeriesMatrix::identity(3, N).shifted(rand_int(1, 3)));
        Lattice l = generated_submodule(e, gens);
        auto sm = submodule(e, l);
        auto fl = semisimple_filtration(sm.module);
        CHECK(fl.d <= fe.d);
        // S_j(L) = S_j(E) cap L, with S_j(L) in the coordinates of the Smith basis of L.
        for (std::size_t j = 0; j < fl.steps.size() && j < fe.steps.size(); ++j) {
            SeriesMatrix basis = sm.basis.with_order(fl.steps[j].order());
            Lattice in_e(fl.steps[j].generators * basis);
            Lattice cap = preimage(fe.steps[j], basis.with_order(fe.steps[j].order()));
            CHECK(same_lattice(Lattice(cap.generators.with_order(in_e.order()) * basis.with_order(in_e.order())), in_e));
        }
    }
}

namespace {

// amat_E Phi = Phi A_target + b^2 Phi' up to the map's order.
bool is_a_linear(const ModulePresentation& e, const XiEmbedding& f) {
    const int n = f.map.order();
    SeriesMatrix lhs = e.amat.with_order(n) * f.map;
    SeriesMatrix rhs = f.map * f.target.amat.with_order(n) + b2_derive(f.map);
    return lhs == rhs;
}

}  // namespace

TEST_CASE("embedding in Xi") {
    Rational al(2, 3);
    auto fe = embed_in_xi(make_E(al, N));
    CHECK(fe.depth == 0);
    CHECK(fe.copies == std::vector<Rational>{al});
    CHECK(fe.map(0, 0).valuation() == 0);
    CHECK(fe.map(0, 0).with_order(fe.map.order()) == TruncSeries::constant(fe.map(0, 0)[0], fe.map.order()));

    for (int n = 0; n <= 3; ++n) {
        auto xi = make_xi(al, n, N);
        auto fx = embed_in_xi(xi);
        CHECK(fx.depth == n);
        CHECK(fx.copies.size() == 1);
        CHECK(is_a_linear(xi, fx));
        auto s = smith(fx.map);
        CHECK(s.rank() == n + 1);
        CHECK(std::all_of(s.d.begin(), s.d.end(), [](int d) { return d == 0; }));
    }

    const std::vector<std::vector<Rational>> spectra = {
        {Rational(1, 2), Rational(1, 2), Rational(3, 2)},
        {Rational(1, 3), Rational(4, 3), Rational(1, 2), Rational(7, 3)},
        {Rational(1), Rational(2), Rational(2), Rational(3)},
        {Rational(2, 5), Rational(7, 5)}};
    for (int t = 0; t < 12; ++t) {
        const auto& sp = spectra[t % spectra.size()];
        auto e = rand_simple_pole(static_cast<int>(sp.size()), N, sp);
        auto f = embed_in_xi(e);
        CHECK(is_a_linear(e, f));
        CHECK(smith(f.map).rank() == e.rank());
        CHECK(f.depth == nilpotent_order(e) - 1);
    }

    for (int p = 1; p <= 2; ++p) {
        auto w = witness(Rational(3, 2), p, N);
        auto f = embed_in_xi(w);
        CHECK(f.depth == 1);
        CHECK(is_a_linear(w, f));
        CHECK(smith(f.map).rank() == 2);
    }
}
