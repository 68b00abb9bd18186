#include "abm/qmatrix.hpp"

#include <utility>

#include "abm/errors.hpp"

namespace abm {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

QMatrix QMatrix::transposed() const {
    QMatrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::block(int i0, int j0, int nr, int nc) const {
    QMatrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
}

void QMatrix::set_block(int i0, int j0, const QMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) (*this)(i0 + i, j0 + j) = m(i, j);
}

std::vector<Rational> QMatrix::row(int i) const {
    return std::vector<Rational>(a_.begin() + static_cast<std::ptrdiff_t>(i) * c_,
                                 a_.begin() + static_cast<std::ptrdiff_t>(i + 1) * c_);
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
    if (o.r_ != r_ || o.c_ != c_) throw InvalidArgument("matrix shapes differ");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
    if (o.r_ != r_ || o.c_ != c_) throw InvalidArgument("matrix shapes differ");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

QMatrix& QMatrix::operator*=(const Rational& s) {
    for (auto& v : a_) v *= s;
    return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }
QMatrix operator*(const QMatrix& a, const QMatrix& b) { return matmul_serial(a, b); }

namespace {

void mul_row(const QMatrix& a, const QMatrix& b, QMatrix& out, int i) {
    Rational tmp;
    for (int k = 0; k < a.cols(); ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < b.cols(); ++j) {
            if (b(k, j) == 0) continue;
            mpq_mul(tmp.get_mpq_t(), aik.get_mpq_t(), b(k, j).get_mpq_t());
            out(i, j) += tmp;
        }
    }
}

}  // namespace

QMatrix matmul_serial(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matmul: inner dimensions differ");
    QMatrix out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) mul_row(a, b, out, i);
    return out;
}

QMatrix matmul_parallel(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matmul: inner dimensions differ");
    QMatrix out(a.rows(), b.cols());
    // Rows are independent and each writes a disjoint slice of out.
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < a.rows(); ++i) mul_row(a, b, out, i);
    return out;
}

QMatrix rref(const QMatrix& m, std::vector<int>* pivots) {
    QMatrix r = m;
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
        int p = -1;
        for (int i = row; i < r.rows(); ++i)
            if (r(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(row, j));
        Rational inv = 1 / r(row, col);
        for (int j = col; j < r.cols(); ++j) r(row, j) *= inv;
        for (int i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == 0) continue;
            Rational f = r(i, col);
            for (int j = col; j < r.cols(); ++j) r(i, j) -= f * r(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    if (pivots) *pivots = piv;
    return r;
}

int rank(const QMatrix& m) {
    std::vector<int> piv;
    rref(m, &piv);
    return static_cast<int>(piv.size());
}

QMatrix right_kernel(const QMatrix& m) {
    std::vector<int> piv;
    QMatrix r = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (int c : piv) is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    QMatrix k(static_cast<int>(free_cols.size()), m.cols());
    for (std::size_t t = 0; t < free_cols.size(); ++t) {
        int f = free_cols[t];
        k(static_cast<int>(t), f) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) k(static_cast<int>(t), piv[i]) = -r(static_cast<int>(i), f);
    }
    return k;
}

QMatrix left_kernel(const QMatrix& m) { return right_kernel(m.transposed()); }

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("inverse of a non-square matrix");
    const int n = m.rows();
    QMatrix aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, QMatrix::identity(n));
    std::vector<int> piv;
    QMatrix r = rref(aug, &piv);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw NonUnit("matrix is singular");
    return r.block(0, n, n, n);
}

bool solve_left(const QMatrix& m, const std::vector<Rational>& y, std::vector<Rational>* x) {
    // x m = y  <=>  m^T x^T = y^T.
    const int n = m.rows(), c = m.cols();
    QMatrix aug(c, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) aug(j, i) = m(i, j);
    for (int j = 0; j < c; ++j) aug(j, n) = y[j];
    std::vector<int> piv;
    QMatrix r = rref(aug, &piv);
    if (!piv.empty() && piv.back() == n) return false;
    if (x) {
        x->assign(n, Rational(0));
        for (std::size_t i = 0; i < piv.size(); ++i) (*x)[piv[i]] = r(static_cast<int>(i), n);
    }
    return true;
}

QMatrix power(const QMatrix& m, int e) {
    QMatrix r = QMatrix::identity(m.rows());
    for (int i = 0; i < e; ++i) r = r * m;
    return r;
}

RatPoly charpoly(const QMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("charpoly of a non-square matrix");
    const int n = m.rows();
    QMatrix h = m;
    // Similarity reduction to upper Hessenberg form.
    for (int j = 0; j + 2 < n; ++j) {
        int p = -1;
        for (int i = j + 1; i < n; ++i)
            if (h(i, j) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != j + 1) {
            for (int c = 0; c < n; ++c) std::swap(h(p, c), h(j + 1, c));
            for (int r = 0; r < n; ++r) std::swap(h(r, p), h(r, j + 1));
        }
        for (int i = j + 2; i < n; ++i) {
            if (h(i, j) == 0) continue;
            Rational f = h(i, j) / h(j + 1, j);
            for (int c = 0; c < n; ++c) h(i, c) -= f * h(j + 1, c);
            for (int r = 0; r < n; ++r) h(r, j + 1) += f * h(r, i);
        }
    }
    std::vector<RatPoly> p(n + 1);
    p[0] = RatPoly::constant(1);
    for (int k = 1; k <= n; ++k) {
        p[k] = RatPoly::x_minus(h(k - 1, k - 1)) * p[k - 1];
        Rational prod = 1;
        for (int i = k - 1; i >= 1; --i) {
            prod *= h(i, i - 1);
            if (prod == 0) break;
            p[k] = p[k] - RatPoly::constant(prod * h(i - 1, k - 1)) * p[i - 1];
        }
    }
    return p[n];
}

RatPoly minpoly(const QMatrix& m) {
    const int n = m.rows();
    // Krylov sequence I, m, m^2, ... in the flattened n^2-dimensional space.
    std::vector<QMatrix> powers{QMatrix::identity(n)};
    while (true) {
        int d = static_cast<int>(powers.size());
        QMatrix stack(d, n * n);
        for (int t = 0; t < d; ++t)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) stack(t, i * n + j) = powers[t](i, j);
        QMatrix k = left_kernel(stack);
        if (k.rows() > 0) {
            std::vector<Rational> c = k.row(0);
            return RatPoly(c).monic();
        }
        powers.push_back(powers.back() * m);
    }
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

namespace {

QMatrix eval_poly(const RatPoly& p, const QMatrix& m, bool parallel) {
    const int n = m.rows();
    QMatrix acc(n, n);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = parallel ? matmul_parallel(acc, m) : matmul_serial(acc, m);
        for (int i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
}

}  // namespace

JordanChevalley jordan_chevalley(const QMatrix& m, bool parallel) {
    RatPoly p = squarefree_part(charpoly(m));
    RatPoly dp = p.derivative();
    QMatrix s = m;
    while (true) {
        QMatrix ps = eval_poly(p, s, parallel);
        if (ps.is_zero()) break;
        QMatrix corr = parallel ? matmul_parallel(ps, inverse(eval_poly(dp, s, parallel)))
                                : matmul_serial(ps, inverse(eval_poly(dp, s, parallel)));
        s -= corr;
    }
    return {s, m - s};
}

}  // namespace abm
