#pragma once

#include <vector>

#include "abm/poly.hpp"
#include "abm/rational.hpp"

namespace abm {

// Dense row-major matrix over Q.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
    static QMatrix identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Rational& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    bool is_zero() const;
    QMatrix transposed() const;
    QMatrix block(int i0, int j0, int nr, int nc) const;
    void set_block(int i0, int j0, const QMatrix& m);
    std::vector<Rational> row(int i) const;

    QMatrix& operator+=(const QMatrix& o);
    QMatrix& operator-=(const QMatrix& o);
    QMatrix& operator*=(const Rational& s);

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(QMatrix a, const Rational& s);
QMatrix operator*(const QMatrix& a, const QMatrix& b);

// Serial reference product and its OpenMP twin (row-parallel); both are
// exact and must agree bit for bit.
QMatrix matmul_serial(const QMatrix& a, const QMatrix& b);
QMatrix matmul_parallel(const QMatrix& a, const QMatrix& b);

// Reduced row echelon form; pivots receives the pivot column of each row.
QMatrix rref(const QMatrix& m, std::vector<int>* pivots = nullptr);
int rank(const QMatrix& m);
// Rows spanning {v : v m = 0}.
QMatrix left_kernel(const QMatrix& m);
// Rows spanning {v : m v^T = 0}, i.e. the right null space as row vectors.
QMatrix right_kernel(const QMatrix& m);
// Throws NonUnit when singular.
QMatrix inverse(const QMatrix& m);
// Solves x m = y for a row vector x; returns false when inconsistent.
bool solve_left(const QMatrix& m, const std::vector<Rational>& y, std::vector<Rational>* x);
QMatrix power(const QMatrix& m, int e);

RatPoly charpoly(const QMatrix& m);
RatPoly minpoly(const QMatrix& m);

// Kronecker product.
QMatrix kron(const QMatrix& a, const QMatrix& b);

// Jordan-Chevalley decomposition m = s + n over Q by Newton iteration on the
// squarefree part of the characteristic polynomial. Uses the given product.
struct JordanChevalley {
    QMatrix semisimple;
    QMatrix nilpotent;
};
JordanChevalley jordan_chevalley(const QMatrix& m, bool parallel = false);

}  // namespace abm
