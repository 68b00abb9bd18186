#include "abm/lattice.hpp"

#include <algorithm>
#include <utility>

#include "abm/errors.hpp"

namespace abm {

namespace {

using Row = std::vector<TruncSeries>;

// s / b^v lifted back to order n (s must have valuation >= v).
TruncSeries quotient_lift(const TruncSeries& s, int v, int n) {
    if (v == 0) return s;
    return s.divided_by_b(v).with_order(n);
}

void axpy_row(Row& dst, const TruncSeries& c, const Row& src) {
    if (c.is_zero()) return;
    for (std::size_t j = 0; j < dst.size(); ++j)
        if (!src[j].is_zero()) dst[j] -= series_mul(c, src[j]);
}

void scale_row(Row& r, const TruncSeries& c) {
    for (auto& x : r)
        if (!x.is_zero()) x = series_mul(c, x);
}

std::vector<Row> rows_of(const SeriesMatrix& m) {
    std::vector<Row> r;
    r.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) r.push_back(m.row(i));
    return r;
}

SeriesMatrix from_rows(const std::vector<Row>& rows, int k, int order) {
    SeriesMatrix m(static_cast<int>(rows.size()), k, order);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < k; ++j) m(static_cast<int>(i), j) = rows[i][j];
    return m;
}

bool row_is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const TruncSeries& s) { return s.is_zero(); });
}

}  // namespace

SmithForm smith(const SeriesMatrix& g) {
    const int m = g.rows(), k = g.cols(), n = g.order();
    std::vector<Row> a = rows_of(g);
    std::vector<Row> u = rows_of(SeriesMatrix::identity(m, n));
    // W is kept as rows of its transpose so column operations become row operations.
    std::vector<Row> wt = rows_of(SeriesMatrix::identity(k, n));
    std::vector<Row> winv = rows_of(SeriesMatrix::identity(k, n));
    SmithForm out;

    for (int t = 0; t < std::min(m, k); ++t) {
        int bi = -1, bj = -1, bv = n;
        for (int i = t; i < m; ++i)
            for (int j = t; j < k; ++j) {
                int v = a[i][j].valuation();
                if (v < bv) bv = v, bi = i, bj = j;
            }
        if (bi < 0) break;
        std::swap(a[t], a[bi]);
        std::swap(u[t], u[bi]);
        if (bj != t) {
            for (auto& r : a) std::swap(r[t], r[bj]);
            std::swap(wt[t], wt[bj]);
            std::swap(winv[t], winv[bj]);
        }
        const int v = bv;
        TruncSeries inv = series_invert(quotient_lift(a[t][t], v, n));
        scale_row(a[t], inv);
        scale_row(u[t], inv);
        for (int i = t + 1; i < m; ++i) {
            if (a[i][t].is_zero()) continue;
            TruncSeries c = quotient_lift(a[i][t], v, n);
            axpy_row(a[i], c, a[t]);
            axpy_row(u[i], c, u[t]);
        }
        for (int j = t + 1; j < k; ++j) {
            if (a[t][j].is_zero()) continue;
            TruncSeries c = quotient_lift(a[t][j], v, n);
            // column j -= c * column t
            for (int i = t; i < m; ++i)
                if (!a[i][t].is_zero()) a[i][j] -= series_mul(c, a[i][t]);
            axpy_row(wt[j], c, wt[t]);
            // Winv <- (I + c E_tj) Winv
            for (int col = 0; col < k; ++col)
                if (!winv[j][col].is_zero()) winv[t][col] += series_mul(c, winv[j][col]);
        }
        out.d.push_back(v);
    }
    out.U = from_rows(u, m, n);
    SeriesMatrix w(k, k, n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) w(i, j) = wt[j][i];
    out.W = std::move(w);
    out.Winv = from_rows(winv, k, n);
    return out;
}

Lattice Lattice::whole(int k, int order) { return Lattice(SeriesMatrix::identity(k, order), true); }
Lattice Lattice::zero(int k, int order) { return Lattice(SeriesMatrix(0, k, order), true); }

namespace {

// Valuation-echelon form. With close set, the rows b^{N-v} p that vanish in
// the pivot column are added back, which makes the form canonical.
Lattice hermite(const Lattice& l, bool close) {
    const int k = l.ambient_rank(), n = l.order();
    std::vector<Row> rest = rows_of(l.generators);
    struct Pivot {
        int col, val;
        Row row;
    };
    std::vector<Pivot> piv;
    for (int j = 0; j < k; ++j) {
        int bi = -1, bv = n;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            int v = rest[i][j].valuation();
            if (v < bv) bv = v, bi = static_cast<int>(i);
        }
        if (bi < 0) continue;
        Row p = std::move(rest[bi]);
        rest.erase(rest.begin() + bi);
        scale_row(p, series_invert(quotient_lift(p[j], bv, n)));
        for (auto& r : rest)
            if (!r[j].is_zero()) axpy_row(r, quotient_lift(r[j], bv, n), p);
        // b^{N-v} p is zero in column j but may survive further right.
        if (close && bv > 0) {
            Row tors(k, TruncSeries(n));
            for (int c = j + 1; c < k; ++c) tors[c] = p[c].shifted(n - bv);
            if (!row_is_zero(tors)) rest.push_back(std::move(tors));
        }
        std::erase_if(rest, row_is_zero);
        piv.push_back({j, bv, std::move(p)});
    }
    for (std::size_t q = 0; q < piv.size(); ++q)
        for (std::size_t p = q + 1; p < piv.size(); ++p) {
            const TruncSeries& e = piv[q].row[piv[p].col];
            const int v = piv[p].val;
            if (e.valuation() >= n) continue;
            TruncSeries high(n);
            for (int d = v; d < n; ++d) high[d] = e[d];
            if (high.is_zero()) continue;
            axpy_row(piv[q].row, quotient_lift(high, v, n), piv[p].row);
        }
    std::vector<Row> rows;
    for (auto& p : piv) rows.push_back(std::move(p.row));
    return Lattice(from_rows(rows, k, n), true);
}

}  // namespace

Lattice echelon(const Lattice& l) { return hermite(l, false); }

bool same_lattice(const Lattice& x, const Lattice& y) {
    if (x.ambient_rank() != y.ambient_rank()) return false;
    const int n = std::min(x.order(), y.order());
    return hermite(Lattice(x.generators.with_order(n)), true).generators ==
           hermite(Lattice(y.generators.with_order(n)), true).generators;
}

int lattice_rank(const Lattice& l) { return smith(l.generators).rank(); }

int lattice_index(const Lattice& l) {
    SmithForm s = smith(l.generators);
    int idx = (l.ambient_rank() - s.rank()) * l.order();
    for (int d : s.d) idx += d;
    return idx;
}

bool contains(const Lattice& l, const SeriesVector& v) {
    SmithForm s = smith(l.generators);
    SeriesVector vw = row_times(v, s.W);
    for (int i = 0; i < l.ambient_rank(); ++i) {
        int need = i < s.rank() ? s.d[i] : l.order();
        if (vw[i].valuation() < need) return false;
    }
    return true;
}

bool contains(const Lattice& l, const Lattice& sub) {
    for (int i = 0; i < sub.count(); ++i)
        if (!contains(l, sub.generators.row(i))) return false;
    return true;
}

SeriesMatrix smith_basis(const SmithForm& s) {
    const int k = s.Winv.rows(), n = s.Winv.order();
    SeriesMatrix f(s.rank(), k, n);
    for (int i = 0; i < s.rank(); ++i)
        for (int j = 0; j < k; ++j) f(i, j) = s.Winv(i, j).shifted(s.d[i]);
    return f;
}

SeriesVector smith_coordinates(const SmithForm& s, const SeriesVector& v) {
    const int n = s.W.order();
    int dmax = 0;
    for (int d : s.d) dmax = std::max(dmax, d);
    SeriesVector vw = row_times(v, s.W);
    for (int i = s.rank(); i < static_cast<int>(vw.size()); ++i)
        if (!vw[i].is_zero()) throw InvalidArgument("vector is not in the lattice");
    SeriesVector c;
    for (int i = 0; i < s.rank(); ++i) {
        if (vw[i].valuation() < s.d[i]) throw InvalidArgument("vector is not in the lattice");
        c.push_back(quotient_lift(vw[i], s.d[i], n).with_order(n - dmax));
    }
    return c;
}

Lattice normalize(const Lattice& l) {
    SmithForm s = smith(l.generators);
    int dmax = 0;
    for (int d : s.d) dmax = std::max(dmax, d);
    // Dividing by b^d leaves the top d coefficients undetermined.
    SeriesMatrix rows = s.Winv.block(0, 0, s.rank(), l.ambient_rank()).with_order(l.order() - dmax);
    return echelon(Lattice(rows));
}

bool is_normal(const Lattice& l) { return same_lattice(l, normalize(l)); }

SeriesMatrix left_kernel_free(const SeriesMatrix& m) {
    SmithForm s = smith(m);
    return s.U.block(s.rank(), 0, m.rows() - s.rank(), m.rows());
}

Lattice sum(const Lattice& x, const Lattice& y) {
    SeriesMatrix g(x.count() + y.count(), x.ambient_rank(), x.order());
    g.set_block(0, 0, x.generators);
    g.set_block(x.count(), 0, y.generators);
    return echelon(Lattice(g));
}

Lattice scaled(const Lattice& l, int m) { return echelon(Lattice(l.generators.shifted(m))); }

Lattice image(const Lattice& l, const SeriesMatrix& map) { return echelon(Lattice(l.generators * map)); }

Lattice preimage(const Lattice& l, const SeriesMatrix& map) {
    const int src = map.rows(), n = std::min(map.order(), l.order());
    SeriesMatrix st(src + l.count(), map.cols(), n);
    st.set_block(0, 0, map.with_order(n));
    st.set_block(src, 0, l.generators.with_order(n) * Rational(-1));
    SeriesMatrix ker = left_kernel_free(st);
    // Pulling back through map divides by up to b^dmax.
    int dmax = 0;
    for (int d : smith(map.with_order(n)).d) dmax = std::max(dmax, d);
    return echelon(Lattice(ker.block(0, 0, ker.rows(), src).with_order(std::max(n - dmax, 1))));
}

}  // namespace abm
