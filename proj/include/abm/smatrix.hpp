#pragma once

#include <vector>

#include "abm/qmatrix.hpp"
#include "abm/series.hpp"

namespace abm {

// Matrix with TruncSeries entries sharing one order.
class SeriesMatrix {
public:
    SeriesMatrix() = default;
    SeriesMatrix(int rows, int cols, int order);
    static SeriesMatrix identity(int n, int order);
    // sum_n coefs[n] b^n
    static SeriesMatrix from_coefs(const std::vector<QMatrix>& coefs, int order);
    static SeriesMatrix constant(const QMatrix& m, int order);

    int rows() const { return r_; }
    int cols() const { return c_; }
    int order() const { return n_; }
    TruncSeries& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const TruncSeries& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    QMatrix coef(int n) const;
    std::vector<TruncSeries> row(int i) const;
    SeriesMatrix with_order(int n) const;
    SeriesMatrix shifted(int m) const;
    SeriesMatrix block(int i0, int j0, int nr, int nc) const;
    void set_block(int i0, int j0, const SeriesMatrix& m);
    // Least valuation over all entries.
    int valuation() const;
    bool is_zero() const { return valuation() >= n_; }

    friend bool operator==(const SeriesMatrix& a, const SeriesMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

private:
    int r_ = 0, c_ = 0, n_ = 0;
    std::vector<TruncSeries> a_;
};

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const SeriesMatrix& a, const Rational& s);
SeriesMatrix kron(const SeriesMatrix& a, const SeriesMatrix& b);
// Entrywise b^2 d/db.
SeriesMatrix b2_derive(const SeriesMatrix& m);
// Inverse over B mod b^N; throws NonUnit when the constant term is singular.
SeriesMatrix invert(const SeriesMatrix& m);

using SeriesVector = std::vector<TruncSeries>;
SeriesVector row_times(const SeriesVector& v, const SeriesMatrix& m);

}  // namespace abm
