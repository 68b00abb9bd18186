#include "abm/smatrix.hpp"

#include <algorithm>

#include "abm/errors.hpp"

namespace abm {

SeriesMatrix::SeriesMatrix(int rows, int cols, int order)
    : r_(rows), c_(cols), n_(order), a_(static_cast<std::size_t>(rows) * cols, TruncSeries(order)) {}

SeriesMatrix SeriesMatrix::identity(int n, int order) {
    SeriesMatrix m(n, n, order);
    for (int i = 0; i < n; ++i) m(i, i)[0] = 1;
    return m;
}

SeriesMatrix SeriesMatrix::from_coefs(const std::vector<QMatrix>& coefs, int order) {
    if (coefs.empty()) throw InvalidArgument("from_coefs needs at least one coefficient");
    SeriesMatrix m(coefs[0].rows(), coefs[0].cols(), order);
    for (int n = 0; n < order && n < static_cast<int>(coefs.size()); ++n)
        for (int i = 0; i < m.r_; ++i)
            for (int j = 0; j < m.c_; ++j) m(i, j)[n] = coefs[n](i, j);
    return m;
}

SeriesMatrix SeriesMatrix::constant(const QMatrix& c, int order) { return from_coefs({c}, order); }

QMatrix SeriesMatrix::coef(int n) const {
    QMatrix q(r_, c_);
    if (n < n_)
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) q(i, j) = (*this)(i, j)[n];
    return q;
}

std::vector<TruncSeries> SeriesMatrix::row(int i) const {
    return std::vector<TruncSeries>(a_.begin() + static_cast<std::ptrdiff_t>(i) * c_,
                                    a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * c_);
}

SeriesMatrix SeriesMatrix::with_order(int n) const {
    SeriesMatrix m(r_, c_, n);
    for (std::size_t t = 0; t < a_.size(); ++t) m.a_[t] = a_[t].with_order(n);
    return m;
}

SeriesMatrix SeriesMatrix::shifted(int s) const {
    SeriesMatrix m = *this;
    for (auto& e : m.a_) e = e.shifted(s);
    return m;
}

SeriesMatrix SeriesMatrix::block(int i0, int j0, int nr, int nc) const {
    SeriesMatrix b(nr, nc, n_);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void SeriesMatrix::set_block(int i0, int j0, const SeriesMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) (*this)(i0 + i, j0 + j) = m(i, j);
}

int SeriesMatrix::valuation() const {
    int v = n_;
    for (const auto& e : a_) v = std::min(v, e.valuation());
    return v;
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("series matrix shapes differ");
    SeriesMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
    return r;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("series matrix shapes differ");
    SeriesMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
    return r;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("series matmul: inner dimensions differ");
    if (a.order() != b.order()) throw OrderMismatch("series matmul: orders differ");
    SeriesMatrix r(a.rows(), b.cols(), a.order());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                if (b(k, j).is_zero()) continue;
                r(i, j) += series_mul(a(i, k), b(k, j));
            }
        }
    return r;
}

SeriesMatrix operator*(const SeriesMatrix& a, const Rational& s) {
    SeriesMatrix r = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) *= s;
    return r;
}

SeriesMatrix kron(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.order() != b.order()) throw OrderMismatch("kron: orders differ");
    SeriesMatrix k(a.rows() * b.rows(), a.cols() * b.cols(), a.order());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = series_mul(a(i, j), b(p, q));
        }
    return k;
}

SeriesMatrix b2_derive(const SeriesMatrix& m) {
    SeriesMatrix r = m;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = b2_derive(m(i, j));
    return r;
}

SeriesMatrix invert(const SeriesMatrix& m) {
    const int n = m.rows(), order = m.order();
    QMatrix inv0 = inverse(m.coef(0));
    std::vector<QMatrix> a(order), x(order);
    for (int p = 0; p < order; ++p) a[p] = m.coef(p);
    x[0] = inv0;
    for (int q = 1; q < order; ++q) {
        QMatrix acc(n, n);
        for (int p = 1; p <= q; ++p)
            if (!a[p].is_zero()) acc += a[p] * x[q - p];
        x[q] = (inv0 * acc) * Rational(-1);
    }
    return SeriesMatrix::from_coefs(x, order);
}

SeriesVector row_times(const SeriesVector& v, const SeriesMatrix& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw InvalidArgument("row_times: length mismatch");
    SeriesVector r(m.cols(), TruncSeries(m.order()));
    for (int i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) r[j] += series_mul(v[i], m(i, j));
    }
    return r;
}

}  // namespace abm
