#pragma once

#include <vector>

#include "abm/rational.hpp"

namespace abm {

// Dense univariate polynomial over Q, coefficients from degree 0 upwards,
// always trimmed so the leading coefficient is nonzero.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rational> coeffs);
    static RatPoly constant(const Rational& c);
    static RatPoly x_minus(const Rational& r);
    static RatPoly from_roots(const std::vector<Rational>& roots);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int j) const { return j < static_cast<int>(c_.size()) ? c_[j] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Rational eval(const Rational& x) const;
    RatPoly monic() const;
    RatPoly derivative() const;
    // p(x - m).
    RatPoly shifted(const Rational& m) const;

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

// Quotient and remainder; b must be nonzero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly gcd(const RatPoly& a, const RatPoly& b);
RatPoly squarefree_part(const RatPoly& p);

struct RationalRoots {
    std::vector<Rational> roots;  // with multiplicity, ascending
    int unresolved_degree = 0;    // degree of the factor without rational roots
};

// Exact: real roots of the squarefree part are isolated with Sturm
// sequences and each isolating interval is narrowed until the simplest
// rational inside it is either a root or provably not one.
RationalRoots rational_roots(const RatPoly& p);
// As above but throws NonGeometric unless p splits over Q.
std::vector<Rational> split_roots(const RatPoly& p);

}  // namespace abm
