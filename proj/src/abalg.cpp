#include "abm/abalg.hpp"

#include <algorithm>
#include <functional>

#include "abm/errors.hpp"

namespace abm {

namespace {

void add_to(TermMap& m, int p, int q, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = m.try_emplace({p, q}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

Rational lookup(const TermMap& m, int p, int q) {
    auto it = m.find({p, q});
    return it == m.end() ? Rational(0) : it->second;
}

// a^p b^q a^p' b^q' = sum_j (-1)^j Gamma_{p',q}^j a^{p+p'-j} b^{q+q'+j}
// (move b^q across a^p'). keep() decides which output exponents survive.
TermMap multiply_terms(const TermMap& x, const TermMap& y, const std::function<bool(int, int)>& keep) {
    TermMap out;
    for (const auto& [ex, cx] : x) {
        auto [p, q] = ex;
        for (const auto& [ey, cy] : y) {
            auto [p2, q2] = ey;
            Rational base = cx * cy;
            for (int j = 0; j <= p2; ++j) {
                if (q == 0 && j > 0) break;
                int pa = p + p2 - j, qb = q + q2 + j;
                if (!keep(pa, qb)) continue;
                Rational g = gamma_coeff(p2, q, j);
                add_to(out, pa, qb, (j % 2 ? -base : base) * g);
            }
        }
    }
    return out;
}

}  // namespace

void AbOperator::add(int p, int q, const Rational& c) {
    if (q < b_order) add_to(terms, p, q, c);
}

Rational AbOperator::coeff(int p, int q) const { return lookup(terms, p, q); }

int AbOperator::a_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, e.first);
    return d;
}

void RightNormalForm::add(int p, int q, const Rational& c) {
    if (q < b_order) add_to(terms, p, q, c);
}

Rational RightNormalForm::coeff(int p, int q) const { return lookup(terms, p, q); }

void GradedOperator::add(int p, int q, const Rational& c) {
    if (p + q < total_order) add_to(terms, p, q, c);
}

AbOperator op_scalar(const Rational& c, int order) {
    AbOperator x(order);
    x.add(0, 0, c);
    return x;
}

AbOperator op_a(int order) {
    AbOperator x(order);
    x.add(1, 0, 1);
    return x;
}

AbOperator op_b(int order) {
    AbOperator x(order);
    x.add(0, 1, 1);
    return x;
}

AbOperator op_series(const TruncSeries& s) {
    AbOperator x(s.order());
    for (int q = 0; q < s.order(); ++q) x.add(0, q, s[q]);
    return x;
}

AbOperator op_linear(const Rational& lambda, int order) {
    AbOperator x(order);
    x.add(1, 0, 1);
    x.add(0, 1, -lambda);
    return x;
}

AbOperator operator+(const AbOperator& x, const AbOperator& y) {
    if (x.b_order != y.b_order) throw OrderMismatch("operator sum: b_order differs");
    AbOperator r = x;
    for (const auto& [e, c] : y.terms) r.add(e.first, e.second, c);
    return r;
}

AbOperator operator-(const AbOperator& x, const AbOperator& y) {
    if (x.b_order != y.b_order) throw OrderMismatch("operator difference: b_order differs");
    AbOperator r = x;
    for (const auto& [e, c] : y.terms) r.add(e.first, e.second, -c);
    return r;
}

AbOperator operator*(const Rational& c, const AbOperator& x) {
    AbOperator r(x.b_order);
    for (const auto& [e, v] : x.terms) r.add(e.first, e.second, c * v);
    return r;
}

AbOperator operator*(const AbOperator& x, const AbOperator& y) { return ab_mul(x, y); }

AbOperator power(const AbOperator& x, int e) {
    AbOperator r = op_scalar(1, x.b_order);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

Rational gamma_coeff(int p, int q, int j) {
    if (j < 0 || j > p) return 0;
    if (q == 0) return j == 0 ? 1 : 0;
    // C(q+j-1, j) * p!/(p-j)!
    Rational falling = 1;
    for (int i = 0; i < j; ++i) falling *= p - i;
    return binomial(q + j - 1, j) * falling;
}

RightNormalForm to_right(const AbOperator& x) {
    RightNormalForm r{x.b_order, {}};
    for (const auto& [e, c] : x.terms) {
        auto [p, q] = e;
        for (int j = 0; j <= p; ++j) {
            if (q == 0 && j > 0) break;
            r.add(p - j, q + j, c * gamma_coeff(p, q, j));
        }
    }
    return r;
}

AbOperator to_left(const RightNormalForm& x) {
    AbOperator r(x.b_order);
    for (const auto& [e, c] : x.terms) {
        auto [p, q] = e;
        for (int j = 0; j <= p; ++j) {
            if (q == 0 && j > 0) break;
            Rational g = gamma_coeff(p, q, j);
            r.add(p - j, q + j, j % 2 ? Rational(-c * g) : Rational(c * g));
        }
    }
    return r;
}

AbOperator ab_mul(const AbOperator& x, const AbOperator& y) {
    if (x.b_order != y.b_order) throw OrderMismatch("ab_mul: b_order differs");
    AbOperator r(x.b_order);
    const int n = x.b_order;
    r.terms = multiply_terms(x.terms, y.terms, [n](int, int q) { return q < n; });
    return r;
}

AbOperator binomial_shift(const Rational& x, int p, int order) {
    RightNormalForm r{order, {}};
    r.add(p, 0, 1);
    Rational gam = 1;  // gamma_j(x) = x (x+1) ... (x+j-1)
    for (int j = 1; j <= p; ++j) {
        gam *= x + (j - 1);
        r.add(p - j, j, gam * binomial(p, j));
    }
    return to_left(r);
}

GradedOperator graded_mul(const GradedOperator& x, const GradedOperator& y) {
    if (x.total_order != y.total_order) throw OrderMismatch("graded_mul: total orders differ");
    GradedOperator r{x.total_order, {}};
    const int m = x.total_order;
    r.terms = multiply_terms(x.terms, y.terms, [m](int p, int q) { return p + q < m; });
    return r;
}

GradedOperator invert_graded(const GradedOperator& x) {
    Rational x00 = lookup(x.terms, 0, 0);
    if (x00 == 0) throw NonUnit("invert_graded: constant term is zero");
    const int m = x.total_order;
    // Homogeneous components; the product is homogeneous in p + q.
    std::vector<TermMap> xs(m), ys(m);
    for (const auto& [e, c] : x.terms) xs[e.first + e.second][e] = c;
    ys[0][{0, 0}] = 1 / x00;
    auto keep = [](int, int) { return true; };
    for (int d = 1; d < m; ++d) {
        TermMap acc;
        for (int e = 1; e <= d; ++e) {
            if (xs[e].empty() || ys[d - e].empty()) continue;
            for (const auto& [k, v] : multiply_terms(xs[e], ys[d - e], keep)) add_to(acc, k.first, k.second, v);
        }
        for (const auto& [k, v] : acc) add_to(ys[d], k.first, k.second, -v / x00);
    }
    GradedOperator y{m, {}};
    for (const auto& comp : ys)
        for (const auto& [k, v] : comp) y.add(k.first, k.second, v);
    return y;
}

TruncSeries act_on_disc(const AbOperator& x, const TruncSeries& f) {
    const int n = f.order();
    TruncSeries out(n);
    for (const auto& [e, c] : x.terms) {
        auto [p, q] = e;
        for (int r = 0; p + q + r < n; ++r) {
            if (f[r] == 0) continue;
            // b^q z^r = r!/(q+r)! z^{q+r}
            out[p + q + r] += c * f[r] * factorial(r) / factorial(q + r);
        }
    }
    return out;
}

LinearDivision divide_linear(const AbOperator& x, const Rational& lambda) {
    const int n = x.b_order;
    RightNormalForm rx = to_right(x);
    int deg = x.a_degree();
    LinearDivision out{AbOperator(n), TruncSeries(n)};
    if (deg < 0) return out;

    // a^m = Q_{m-1}(a - lambda b) + R_m with Q_0 = 1, R_0 = 1,
    // R_{m+1} = (lambda + m) b R_m and Q_m = a Q_{m-1} + R_m.
    // X = sum_p X_p(b) a^p in right normal form.
    std::vector<TruncSeries> xp(deg + 1, TruncSeries(n));
    for (const auto& [e, c] : rx.terms) xp[e.first][e.second] += c;

    std::vector<TruncSeries> rs(deg + 1, TruncSeries(n));
    rs[0][0] = 1;
    for (int m = 0; m < deg; ++m) rs[m + 1] = (lambda + m) * rs[m].shifted(1);
    AbOperator qm = op_scalar(1, n);
    for (int p = 0; p <= deg; ++p) {
        if (p >= 1) {
            if (p >= 2) qm = op_a(n) * qm + op_series(rs[p - 1]);
            if (!xp[p].is_zero()) out.Q = out.Q + op_series(xp[p]) * qm;
        }
        out.R += series_mul(xp[p], rs[p]);
    }
    return out;
}

AbOperator factored_product(const std::vector<LinearFactor>& factors, int order) {
    AbOperator p = op_scalar(1, order);
    for (const auto& f : factors) p = p * op_linear(f.lambda, order) * op_series(f.T.with_order(order));
    return p;
}

FactoredDivision divide_factored(const AbOperator& x, const std::vector<LinearFactor>& factors) {
    const int n = x.b_order;
    if (factors.empty()) return {x, AbOperator(n)};
    const LinearFactor& last = factors.back();
    TruncSeries t = last.T.with_order(n);
    if (!t.is_unit()) throw NonUnit("divide_factored: unit factor has zero constant term");
    // X T^{-1} = Q'(a - lambda b) + R'', so X = Q'(a - lambda b) T + R'' T.
    LinearDivision lin = divide_linear(x * op_series(series_invert(t)), last.lambda);
    std::vector<LinearFactor> head(factors.begin(), factors.end() - 1);
    FactoredDivision inner = divide_factored(lin.Q, head);
    AbOperator tail = op_linear(last.lambda, n) * op_series(t);
    return {inner.Q, inner.R * tail + op_series(series_mul(lin.R, t))};
}

}  // namespace abm
