#include "abm/module.hpp"

#include <algorithm>
#include <map>

#include "abm/errors.hpp"

namespace abm {

namespace {

void require_square(const SeriesMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("presentation matrix must be square");
}

void require_order(const SeriesVector& v, int order) {
    for (const auto& s : v)
        if (s.order() != order) throw OrderMismatch("vector order differs from the module order");
}

QMatrix scalar_matrix(int n, const Rational& c) {
    QMatrix m = QMatrix::identity(n);
    m *= c;
    return m;
}

SeriesMatrix pad(const SeriesMatrix& m, int order) { return m.with_order(order); }

}  // namespace

// Solves X A - B X + s X = C. Returns false if inconsistent; *unique reports
// whether the operator is invertible.
bool solve_sylvester(const QMatrix& a, const QMatrix& b, const Rational& s, const QMatrix& c, QMatrix* x,
                     bool* unique) {
    const int r = c.rows(), k = c.cols(), n = r * k;
    QMatrix l(n, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < k; ++j) {
            const int col = i * k + j;
            for (int t = 0; t < k; ++t)
                if (a(t, j) != 0) l(i * k + t, col) += a(t, j);
            for (int t = 0; t < r; ++t)
                if (b(i, t) != 0) l(t * k + j, col) -= b(i, t);
            l(col, col) += s;
        }
    if (unique) *unique = rank(l) == n;
    std::vector<Rational> y(n), sol;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < k; ++j) y[i * k + j] = c(i, j);
    if (!solve_left(l, y, &sol)) return false;
    *x = QMatrix(r, k);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < k; ++j) (*x)(i, j) = sol[i * k + j];
    return true;
}

ModulePresentation::ModulePresentation(SeriesMatrix a) : amat(std::move(a)) { require_square(amat); }

BernsteinPolynomial BernsteinPolynomial::shifted(const Rational& m) const {
    BernsteinPolynomial r = *this;
    for (auto& x : r.roots) x += m;
    return r;
}

BernsteinPolynomial operator*(const BernsteinPolynomial& x, const BernsteinPolynomial& y) {
    BernsteinPolynomial r = x;
    r.roots.insert(r.roots.end(), y.roots.begin(), y.roots.end());
    std::sort(r.roots.begin(), r.roots.end());
    return r;
}

ModuleVector basis_vector(int k, int i, int order) {
    ModuleVector v(k, TruncSeries(order));
    v[i][0] = 1;
    return v;
}

ModulePresentation with_order(const ModulePresentation& e, int order) {
    return ModulePresentation(e.amat.with_order(order));
}

ModuleVector apply_a(const ModulePresentation& e, const ModuleVector& x) {
    if (static_cast<int>(x.size()) != e.rank()) throw InvalidArgument("vector length differs from the module rank");
    require_order(x, e.order());
    ModuleVector r = row_times(x, e.amat);
    for (std::size_t i = 0; i < x.size(); ++i) r[i] += b2_derive(x[i]);
    return r;
}

SeriesMatrix apply_a_rows(const ModulePresentation& e, const SeriesMatrix& rows) {
    SeriesMatrix out(rows.rows(), rows.cols(), rows.order());
    for (int i = 0; i < rows.rows(); ++i) {
        ModuleVector v = apply_a(e, rows.row(i));
        for (int j = 0; j < rows.cols(); ++j) out(i, j) = v[j];
    }
    return out;
}

ModuleVector apply_op(const ModulePresentation& e, const AbOperator& x, const ModuleVector& v) {
    const int n = e.order();
    require_order(v, n);
    const int deg = x.a_degree();
    if (deg < 0) return ModuleVector(v.size(), TruncSeries(n));
    std::vector<TruncSeries> s(deg + 1, TruncSeries(n));
    for (const auto& [pq, c] : x.terms)
        if (pq.second < n) s[pq.first][pq.second] += c;
    auto times = [&](const TruncSeries& f) {
        ModuleVector r = v;
        for (auto& c : r) c = series_mul(f, c);
        return r;
    };
    ModuleVector acc = times(s[deg]);
    for (int p = deg - 1; p >= 0; --p) {
        acc = apply_a(e, acc);
        ModuleVector t = times(s[p]);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
    }
    return acc;
}

bool is_simple_pole(const ModulePresentation& e) { return e.amat.coef(0).is_zero(); }

SeriesMatrix pole_matrix(const ModulePresentation& e) {
    if (!is_simple_pole(e)) throw NotSimplePole("the a-action has a constant term");
    const int k = e.rank(), n = e.order();
    if (n < 2) throw PrecisionExhausted("order too small to divide by b");
    SeriesMatrix f(k, k, n - 1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) f(i, j) = e.amat(i, j).divided_by_b(1);
    return f;
}

ModulePresentation make_E_theta(const QMatrix& theta, int order) {
    return ModulePresentation(SeriesMatrix::constant(theta, order).shifted(1));
}

ModulePresentation make_E(const Rational& lambda, int order) {
    return make_E_theta(scalar_matrix(1, lambda), order);
}

ModulePresentation make_xi(const Rational& alpha, int n, int order) {
    QMatrix t = scalar_matrix(n + 1, alpha);
    for (int j = 1; j <= n; ++j) t(j, j - 1) = 1;
    return make_E_theta(t, order);
}

ModulePresentation direct_sum(const ModulePresentation& x, const ModulePresentation& y) {
    if (x.order() != y.order()) throw OrderMismatch("direct_sum: orders differ");
    SeriesMatrix m(x.rank() + y.rank(), x.rank() + y.rank(), x.order());
    m.set_block(0, 0, x.amat);
    m.set_block(x.rank(), x.rank(), y.amat);
    return ModulePresentation(m);
}

ModulePresentation tensor(const ModulePresentation& x, const ModulePresentation& y) {
    if (x.order() != y.order()) throw OrderMismatch("tensor: orders differ");
    const int n = x.order();
    return ModulePresentation(kron(x.amat, SeriesMatrix::identity(y.rank(), n)) +
                              kron(SeriesMatrix::identity(x.rank(), n), y.amat));
}

ModulePresentation change_basis(const ModulePresentation& e, const SeriesMatrix& t) {
    SeriesMatrix tt = pad(t, e.order());
    return ModulePresentation((tt * e.amat + b2_derive(tt)) * invert(tt));
}

SeriesVector coordinates(const SeriesMatrix& rows, const SeriesVector& v) {
    SmithForm s = smith(rows);
    SeriesVector ct = smith_coordinates(s, v);
    const int n = ct.empty() ? rows.order() : ct[0].order();
    SeriesVector c(rows.rows(), TruncSeries(n));
    for (int i = 0; i < s.rank(); ++i)
        for (int j = 0; j < rows.rows(); ++j) c[j] += series_mul(ct[i], s.U(i, j).with_order(n));
    return c;
}

SubmoduleBasis submodule(const ModulePresentation& e, const Lattice& l) {
    SmithForm s = smith(l.generators);
    SeriesMatrix f = smith_basis(s);
    const int r = s.rank();
    int dmax = 0;
    for (int d : s.d) dmax = std::max(dmax, d);
    const int n = e.order() - dmax;
    if (n < 2) throw PrecisionExhausted("submodule: no precision left");
    SeriesMatrix a(r, r, n);
    for (int i = 0; i < r; ++i) {
        SeriesVector c;
        try {
            c = smith_coordinates(s, apply_a(e, f.row(i)));
        } catch (const InvalidArgument&) {
            throw InvalidArgument("submodule: lattice is not stable under a");
        }
        for (int j = 0; j < r; ++j) a(i, j) = c[j].with_order(n);
    }
    return {ModulePresentation(a), f};
}

Adapted adapted_split(const ModulePresentation& e, const Lattice& normal_sub) {
    SmithForm s = smith(normal_sub.generators);
    for (int d : s.d)
        if (d != 0) throw InvalidArgument("adapted_split: lattice is not normal");
    const int k = e.rank(), r = s.rank();
    Adapted out;
    out.basis = s.Winv;
    out.inverse = s.W;
    out.whole = change_basis(e, s.Winv);
    if (!out.whole.amat.block(0, r, r, k - r).is_zero())
        throw InvalidArgument("adapted_split: lattice is not stable under a");
    out.sub = ModulePresentation(out.whole.amat.block(0, 0, r, r));
    out.quotient = ModulePresentation(out.whole.amat.block(r, r, k - r, k - r));
    return out;
}

ModuleVector solve_shifted(const ModulePresentation& e, const Rational& lambda, const ModuleVector& y) {
    SeriesMatrix f = pole_matrix(e);
    const int k = e.rank();
    if (static_cast<int>(y.size()) != k) throw InvalidArgument("vector length differs from the module rank");
    const int m = std::min(y.empty() ? f.order() : y[0].order(), f.order());
    std::vector<QMatrix> fc(m);
    for (int p = 0; p < m; ++p) fc[p] = f.coef(p);
    std::vector<std::vector<Rational>> z(m);
    for (int n = 0; n < m; ++n) {
        std::vector<Rational> rhs(k);
        for (int i = 0; i < k; ++i) rhs[i] = y[i][n];
        for (int p = 1; p <= n; ++p) {
            if (fc[p].is_zero()) continue;
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < k; ++i)
                    if (z[n - p][i] != 0) rhs[j] -= z[n - p][i] * fc[p](i, j);
        }
        QMatrix mat = fc[0] + scalar_matrix(k, Rational(n) - lambda);
        if (rank(mat) < k)
            throw Resonance(n, "F_0 + (" + to_string(Rational(n) - lambda) + ") is singular");
        solve_left(mat, rhs, &z[n]);
    }
    ModuleVector x(k, TruncSeries(m));
    for (int n = 0; n < m; ++n)
        for (int i = 0; i < k; ++i) x[i][n] = z[n][i];
    return x;
}

Split split_extension(const ModulePresentation& e, int kf) {
    const int k = e.rank(), kg = k - kf;
    if (kf <= 0 || kg <= 0) throw InvalidArgument("split_extension: block size out of range");
    SeriesMatrix f = pole_matrix(e);
    if (!f.block(0, kf, kf, kg).is_zero()) throw InvalidArgument("split_extension: presentation is not block lower triangular");
    const int n1 = f.order();
    std::vector<QMatrix> fa(n1), ga(n1), ha(n1);
    for (int p = 0; p < n1; ++p) {
        QMatrix c = f.coef(p);
        fa[p] = c.block(0, 0, kf, kf);
        ha[p] = c.block(kf, 0, kg, kf);
        ga[p] = c.block(kf, kf, kg, kg);
    }
    for (const auto& l : rational_roots(charpoly(fa[0])).roots)
        for (const auto& mu : rational_roots(charpoly(ga[0])).roots) {
            Rational d = mu - l;
            if (d > 0 && d.get_den() == 1)
                throw ObstructedSplit("eigenvalues " + to_string(l) + " and " + to_string(mu) + " differ by a positive integer");
        }
    std::vector<QMatrix> z(n1);
    for (int n = 0; n < n1; ++n) {
        QMatrix rhs = ha[n] * Rational(-1);
        for (int p = 1; p <= n; ++p) {
            rhs -= z[n - p] * fa[p];
            rhs += ga[p] * z[n - p];
        }
        bool unique = false;
        if (!solve_sylvester(fa[0], ga[0], n, rhs, &z[n], &unique) || (!unique && n > 0))
            throw ObstructedSplit("the coupling cannot be removed at b^" + std::to_string(n));
    }
    Split out;
    out.Z = SeriesMatrix::from_coefs(z, n1);
    SeriesMatrix t = SeriesMatrix::identity(k, e.order());
    t.set_block(kf, 0, out.Z.with_order(e.order()));
    out.split = change_basis(e, t);
    return out;
}

Rational spectral_class(const Rational& lambda) {
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), lambda.get_num_mpz_t(), lambda.get_den_mpz_t());
    return lambda - Rational(c) + 1;
}

Spectral spectral_blocks(const QMatrix& f0) {
    const int k = f0.rows();
    std::vector<Rational> roots = split_roots(charpoly(f0));
    std::map<Rational, int> mult;
    for (const auto& r : roots) ++mult[r];
    std::vector<std::pair<Rational, int>> order(mult.begin(), mult.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        Rational cx = spectral_class(x.first), cy = spectral_class(y.first);
        if (cx != cy) return cx < cy;
        return x.first < y.first;
    });
    Spectral sp;
    sp.P = QMatrix(k, k);
    int off = 0;
    for (const auto& [l, m] : order) {
        QMatrix ker = left_kernel(power(f0 - scalar_matrix(k, l), m));
        if (ker.rows() != m) throw NonGeometric("generalized eigenspace dimension mismatch");
        sp.P.set_block(off, 0, ker);
        sp.blocks.push_back({l, off, m});
        off += m;
    }
    sp.Pinv = inverse(sp.P);
    sp.J = sp.P * f0 * sp.Pinv;
    return sp;
}

GaugeForm gauge_form(const SeriesMatrix& f, bool full) {
    const int k = f.rows(), n1 = f.order();
    GaugeForm g;
    g.spec = spectral_blocks(f.coef(0));
    const Spectral& sp = g.spec;
    std::vector<QMatrix> ft(n1), gq(n1), fn(n1);
    for (int p = 0; p < n1; ++p) ft[p] = sp.P * f.coef(p) * sp.Pinv;
    gq[0] = QMatrix::identity(k);
    fn[0] = sp.J;
    for (int n = 1; n < n1; ++n) {
        QMatrix c = ft[n];
        for (int q = 1; q < n; ++q) {
            if (gq[q].is_zero()) continue;
            c += gq[q] * ft[n - q];
            c -= fn[n - q] * gq[q];
        }
        gq[n] = QMatrix(k, k);
        fn[n] = QMatrix(k, k);
        for (const auto& ba : sp.blocks)
            for (const auto& bb : sp.blocks) {
                QMatrix cab = c.block(ba.offset, bb.offset, ba.size, bb.size);
                bool kill = full ? ba.lambda - bb.lambda != n
                                 : spectral_class(ba.lambda) != spectral_class(bb.lambda);
                if (!kill) {
                    fn[n].set_block(ba.offset, bb.offset, cab);
                    continue;
                }
                if (cab.is_zero()) continue;
                QMatrix ja = sp.J.block(ba.offset, ba.offset, ba.size, ba.size);
                QMatrix jb = sp.J.block(bb.offset, bb.offset, bb.size, bb.size);
                QMatrix x;
                bool unique = false;
                if (!solve_sylvester(jb, ja, n, cab * Rational(-1), &x, &unique) || !unique)
                    throw NonGeometric("gauge equation is singular");
                gq[n].set_block(ba.offset, bb.offset, x);
            }
    }
    g.G = SeriesMatrix::from_coefs(gq, n1);
    g.Fn = SeriesMatrix::from_coefs(fn, n1);
    g.T = g.G * SeriesMatrix::constant(sp.P, n1);
    return g;
}

PrimitiveDecomposition decompose_primitive(const ModulePresentation& e) {
    GaugeForm g = gauge_form(pole_matrix(e), false);
    const int n = e.order();
    PrimitiveDecomposition out;
    // A basis change known mod b^{N-1} is exact mod b^N on simple-pole modules.
    out.T = g.T.with_order(n);
    SeriesMatrix fn = g.Fn.with_order(n).shifted(1);
    const auto& blocks = g.spec.blocks;
    for (std::size_t i = 0; i < blocks.size();) {
        Rational cls = spectral_class(blocks[i].lambda);
        int off = blocks[i].offset, size = 0;
        while (i < blocks.size() && spectral_class(blocks[i].lambda) == cls) size += blocks[i++].size;
        out.parts.push_back({cls, off, ModulePresentation(fn.block(off, off, size, size))});
    }
    return out;
}

Saturation saturate(const ModulePresentation& e) {
    const int k = e.rank(), n = e.order();
    if (!power(e.amat.coef(0), k).is_zero())
        throw NotRegular("a is not nilpotent on E/bE");
    Lattice m = Lattice::whole(k, n);
    int idx = 0, q = 0;
    for (int p = 0;; ++p) {
        if (p + 1 >= n) throw PrecisionExhausted("saturation did not stabilise below the working order");
        const int c = m.count();
        SeriesMatrix gens(2 * c, k, n);
        SeriesMatrix sh = m.generators.shifted(1);
        gens.set_block(0, 0, sh);
        gens.set_block(c, 0, apply_a_rows(e, m.generators) - sh * Rational(p));
        Lattice next = echelon(Lattice(gens));
        const int nidx = lattice_index(next);
        if (nidx == idx + k) {
            q = p;
            break;
        }
        m = next;
        idx = nidx;
    }
    SmithForm s = smith(m.generators);
    if (s.rank() != k) throw NotRegular("saturation is not of full rank");
    SeriesMatrix f = smith_basis(s);
    int dmax = 0, dsum = 0;
    for (int d : s.d) dmax = std::max(dmax, d), dsum += d;
    const int n2 = n - dmax;
    Saturation out;
    out.shift = q;
    out.codim = k * q - dsum;
    SeriesMatrix a(k, k, n2), inc(k, k, n2);
    for (int i = 0; i < k; ++i) {
        ModuleVector fi = f.row(i);
        ModuleVector v = apply_a(e, fi);
        for (int j = 0; j < k; ++j) v[j] -= fi[j].shifted(1) * Rational(q);
        SeriesVector c = smith_coordinates(s, v);
        for (int j = 0; j < k; ++j) a(i, j) = c[j];
        ModuleVector bq(k, TruncSeries(n));
        if (q < n) bq[i][q] = 1;
        SeriesVector ci = smith_coordinates(s, bq);
        for (int j = 0; j < k; ++j) inc(i, j) = ci[j];
    }
    out.sharp = ModulePresentation(a);
    out.inclusion = inc;
    if (!is_simple_pole(out.sharp)) throw NotRegular("saturation does not have a simple pole");
    return out;
}

namespace {

QMatrix sharp_residue(const ModulePresentation& e) {
    Saturation s = saturate(e);
    if (s.sharp.order() < 2) throw PrecisionExhausted("saturation left no precision for the residue");
    return s.sharp.amat.coef(1) * Rational(-1);
}

}  // namespace

BernsteinPolynomial bernstein_min(const ModulePresentation& e) {
    return {split_roots(minpoly(sharp_residue(e)))};
}

BernsteinPolynomial bernstein_char(const ModulePresentation& e) {
    return {split_roots(charpoly(sharp_residue(e)))};
}

bool is_a_stable(const ModulePresentation& e, const Lattice& l) {
    for (int i = 0; i < l.count(); ++i)
        if (!contains(l, apply_a(e, l.generators.row(i)))) return false;
    return true;
}

Lattice generated_submodule(const ModulePresentation& e, const SeriesMatrix& gens) {
    Lattice l = echelon(Lattice(gens));
    for (;;) {
        Lattice next = sum(l, Lattice(apply_a_rows(e, l.generators)));
        if (same_lattice(next, l)) return l;
        l = next;
    }
}

Lattice normalize_submodule(const ModulePresentation& e, const Lattice& l) {
    if (!is_a_stable(e, l)) throw InvalidArgument("normalize_submodule: lattice is not stable under a");
    return normalize(l);
}

SeriesMatrix jordan_chain(const ModulePresentation& e, const Rational& lambda, int k) {
    if (k < 1) throw InvalidArgument("jordan_chain: length must be positive");
    SeriesMatrix f = pole_matrix(e);
    const int r = e.rank(), n1 = f.order();
    if (n1 < 2) throw PrecisionExhausted("jordan_chain: order too small");
    QMatrix a = f.coef(0) - scalar_matrix(r, lambda);
    QMatrix ak = power(a, k), ak1 = power(a, k - 1);
    QMatrix ker = left_kernel(ak);
    int pick = -1;
    for (int i = 0; i < ker.rows() && pick < 0; ++i)
        if (!(QMatrix(ker.block(i, 0, 1, r)) * ak1).is_zero()) pick = i;
    if (pick < 0) throw NoSuchBlock("no Jordan block of size " + std::to_string(k) + " at " + to_string(lambda));
    std::vector<QMatrix> v(k + 1);
    v[0] = ker.block(pick, 0, 1, r);
    for (int j = 1; j <= k; ++j) v[j] = v[j - 1] * a;  // v[k] = 0
    auto as_series = [&](const QMatrix& row, int order) {
        return SeriesMatrix::constant(row, order).row(0);
    };
    std::vector<ModuleVector> y(k);
    for (int j = 0; j < k; ++j) {
        ModuleVector w = row_times(as_series(v[j], n1), f);
        ModuleVector vj = as_series(v[j], n1), vn = as_series(v[j + 1], n1);
        for (int i = 0; i < r; ++i) {
            TruncSeries t = w[i] - lambda * vj[i] - vn[i];
            y[j].push_back(t.divided_by_b(1));
        }
    }
    const int n2 = n1 - 1;
    ModuleVector x(r, TruncSeries(n2));
    SeriesMatrix out(k, r, n1);
    for (int j = k - 1; j >= 0; --j) {
        ModuleVector rhs = y[j];
        for (int i = 0; i < r; ++i) rhs[i] += x[i];
        x = solve_shifted(e, lambda - 1, rhs);
        ModuleVector ej = as_series(v[j], n1);
        for (int i = 0; i < r; ++i) out(j, i) = ej[i] - x[i].with_order(n1).shifted(1);
    }
    return out;
}

}  // namespace abm
