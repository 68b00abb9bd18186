#pragma once

#include <map>
#include <utility>
#include <vector>

#include "abm/series.hpp"

namespace abm {

using Exponents = std::pair<int, int>;  // (p, q)
using TermMap = std::map<Exponents, Rational>;

// Sum of x_{p,q} a^p b^q (left normal form) with q < b_order.
struct AbOperator {
    int b_order = kDefaultOrder;
    TermMap terms;

    AbOperator() = default;
    explicit AbOperator(int order) : b_order(order) {}

    void add(int p, int q, const Rational& c);
    Rational coeff(int p, int q) const;
    bool is_zero() const { return terms.empty(); }
    int a_degree() const;  // -1 for zero
    friend bool operator==(const AbOperator& x, const AbOperator& y) {
        return x.b_order == y.b_order && x.terms == y.terms;
    }
};

// Sum of d_{p,q} b^q a^p.
struct RightNormalForm {
    int b_order = kDefaultOrder;
    TermMap terms;

    void add(int p, int q, const Rational& c);
    Rational coeff(int p, int q) const;
    friend bool operator==(const RightNormalForm& x, const RightNormalForm& y) {
        return x.b_order == y.b_order && x.terms == y.terms;
    }
};

// Operators truncated by total degree p + q < total_order.
struct GradedOperator {
    int total_order = kDefaultOrder;
    TermMap terms;

    void add(int p, int q, const Rational& c);
};

AbOperator op_scalar(const Rational& c, int order);
AbOperator op_a(int order);
AbOperator op_b(int order);
AbOperator op_series(const TruncSeries& s);
// a - lambda b
AbOperator op_linear(const Rational& lambda, int order);

AbOperator operator+(const AbOperator& x, const AbOperator& y);
AbOperator operator-(const AbOperator& x, const AbOperator& y);
AbOperator operator*(const Rational& c, const AbOperator& x);
AbOperator operator*(const AbOperator& x, const AbOperator& y);
AbOperator power(const AbOperator& x, int e);

Rational gamma_coeff(int p, int q, int j);
RightNormalForm to_right(const AbOperator& x);
AbOperator to_left(const RightNormalForm& x);
AbOperator ab_mul(const AbOperator& x, const AbOperator& y);

// (a + x b)^p in left normal form.
AbOperator binomial_shift(const Rational& x, int p, int order);

// Right inverse modulo total degree; throws NonUnit when x_{0,0} = 0.
GradedOperator invert_graded(const GradedOperator& x);
GradedOperator graded_mul(const GradedOperator& x, const GradedOperator& y);

// a = multiplication by z, b = primitive vanishing at 0. The result keeps
// the z-order of f.
TruncSeries act_on_disc(const AbOperator& x, const TruncSeries& f);

struct LinearDivision {
    AbOperator Q;
    TruncSeries R;
};
// X = Q (a - lambda b) + R with R in B.
LinearDivision divide_linear(const AbOperator& x, const Rational& lambda);

// One factor (a - lambda b) T of a factored fresco presentation.
struct LinearFactor {
    Rational lambda;
    TruncSeries T;
};

// (a - l1 b) T1 (a - l2 b) T2 ... (a - lk b) Tk
AbOperator factored_product(const std::vector<LinearFactor>& factors, int order);

struct FactoredDivision {
    AbOperator Q;
    AbOperator R;
};
// X = Q P + R with deg_a R <= k - 1, by chaining linear divisions from the
// rightmost factor.
FactoredDivision divide_factored(const AbOperator& x, const std::vector<LinearFactor>& factors);

}  // namespace abm
