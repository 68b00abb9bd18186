#include "abm/series.hpp"

#include <string>

#include "abm/errors.hpp"

namespace abm {

TruncSeries::TruncSeries(int order) : c_(order > 0 ? order : 0) {
    if (order <= 0) throw InvalidArgument("series order must be positive");
}

TruncSeries::TruncSeries(int order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (order <= 0) throw InvalidArgument("series order must be positive");
    if (static_cast<int>(c_.size()) > order)
        throw InvalidArgument("more coefficients than the series order");
    c_.resize(order);
}

TruncSeries TruncSeries::constant(const Rational& c, int order) {
    TruncSeries s(order);
    s.c_[0] = c;
    return s;
}

TruncSeries TruncSeries::monomial(const Rational& c, int power, int order) {
    TruncSeries s(order);
    if (power < order) s.c_[power] = c;
    return s;
}

int TruncSeries::valuation() const {
    for (int j = 0; j < order(); ++j)
        if (c_[j] != 0) return j;
    return order();
}

TruncSeries TruncSeries::with_order(int n) const {
    TruncSeries r(n);
    for (int j = 0; j < n && j < order(); ++j) r.c_[j] = c_[j];
    return r;
}

TruncSeries TruncSeries::shifted(int m) const {
    TruncSeries r(order());
    for (int j = 0; j + m < order(); ++j) r.c_[j + m] = c_[j];
    return r;
}

TruncSeries TruncSeries::divided_by_b(int m) const {
    if (m >= order()) throw PrecisionExhausted("division by b^" + std::to_string(m) + " consumes all precision");
    for (int j = 0; j < m; ++j)
        if (c_[j] != 0) throw InvalidArgument("series is not divisible by b^" + std::to_string(m));
    TruncSeries r(order() - m);
    for (int j = m; j < order(); ++j) r.c_[j - m] = c_[j];
    return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    if (o.order() != order()) throw OrderMismatch("series orders differ");
    for (int j = 0; j < order(); ++j) c_[j] += o.c_[j];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    if (o.order() != order()) throw OrderMismatch("series orders differ");
    for (int j = 0; j < order(); ++j) c_[j] -= o.c_[j];
    return *this;
}

TruncSeries& TruncSeries::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
TruncSeries operator-(TruncSeries a) { return a *= Rational(-1); }
TruncSeries operator*(TruncSeries a, const Rational& s) { return a *= s; }
TruncSeries operator*(const Rational& s, TruncSeries a) { return a *= s; }
TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return series_mul(a, b); }

TruncSeries series_mul(const TruncSeries& s, const TruncSeries& t) {
    if (s.order() != t.order()) throw OrderMismatch("series_mul: orders differ");
    const int n = s.order();
    TruncSeries r(n);
    int vs = s.valuation(), vt = t.valuation();
    Rational tmp;
    for (int i = vs; i < n; ++i) {
        if (s[i] == 0) continue;
        for (int j = vt; i + j < n; ++j) {
            if (t[j] == 0) continue;
            mpq_mul(tmp.get_mpq_t(), s[i].get_mpq_t(), t[j].get_mpq_t());
            r[i + j] += tmp;
        }
    }
    return r;
}

TruncSeries series_invert(const TruncSeries& s) {
    if (!s.is_unit()) throw NonUnit("series_invert: constant term is zero");
    const int n = s.order();
    TruncSeries t(n);
    Rational inv0 = 1 / s[0];
    t[0] = inv0;
    for (int q = 1; q < n; ++q) {
        Rational acc = 0;
        for (int j = 1; j <= q; ++j)
            if (s[j] != 0) acc += s[j] * t[q - j];
        t[q] = -inv0 * acc;
    }
    return t;
}

TruncSeries series_derive(const TruncSeries& s) {
    if (s.order() <= 1) throw PrecisionExhausted("series_derive: no precision left");
    TruncSeries r(s.order() - 1);
    for (int j = 0; j + 1 < s.order(); ++j) r[j] = (j + 1) * s[j + 1];
    return r;
}

TruncSeries b2_derive(const TruncSeries& s) {
    TruncSeries r(s.order());
    for (int n = 2; n < s.order(); ++n) r[n] = (n - 1) * s[n - 1];
    return r;
}

TruncSeries series_exp_integral(const TruncSeries& g) {
    if (g[0] != 0) throw InvalidArgument("series_exp_integral: g(0) must vanish");
    const int n = g.order();
    TruncSeries s(n);
    s[0] = 1;
    for (int m = 1; m < n; ++m) {
        Rational acc = 0;
        for (int p = 1; p <= m; ++p)
            if (g[p] != 0) acc += g[p] * s[m - p];
        s[m] = acc / m;
    }
    return s;
}

}  // namespace abm
