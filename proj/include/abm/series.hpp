#pragma once

#include <vector>

#include "abm/rational.hpp"

namespace abm {

inline constexpr int kDefaultOrder = 16;

// Power series in b modulo b^order with exact rational coefficients.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(int order);
    // Missing trailing coefficients are zero; extra ones are an error.
    TruncSeries(int order, std::vector<Rational> coeffs);

    static TruncSeries constant(const Rational& c, int order);
    static TruncSeries monomial(const Rational& c, int power, int order);

    int order() const { return static_cast<int>(c_.size()); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](int j) const { return c_[j]; }
    Rational& operator[](int j) { return c_[j]; }

    // Least j with a nonzero coefficient; order() for the zero series.
    int valuation() const;
    bool is_unit() const { return !c_.empty() && c_[0] != 0; }
    bool is_zero() const { return valuation() == order(); }

    // Change the truncation order: drop high terms or pad with zeros.
    TruncSeries with_order(int n) const;
    // Multiply by b^m, keeping the order.
    TruncSeries shifted(int m) const;
    // Exact division by b^m; the result has order() - m.
    TruncSeries divided_by_b(int m) const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const Rational& s);

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
};

TruncSeries operator+(TruncSeries a, const TruncSeries& b);
TruncSeries operator-(TruncSeries a, const TruncSeries& b);
TruncSeries operator-(TruncSeries a);
TruncSeries operator*(TruncSeries a, const Rational& s);
TruncSeries operator*(const Rational& s, TruncSeries a);
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);

TruncSeries series_mul(const TruncSeries& s, const TruncSeries& t);
TruncSeries series_invert(const TruncSeries& s);
// Order drops by one.
TruncSeries series_derive(const TruncSeries& s);
// b^2 S', which needs no extra precision: coefficient n is (n-1) s_{n-1}.
TruncSeries b2_derive(const TruncSeries& s);
// Solution of b S' = g S with S(0) = 1, for g with g(0) = 0.
TruncSeries series_exp_integral(const TruncSeries& g);

}  // namespace abm
