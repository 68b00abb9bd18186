#include "abm/poly.hpp"

#include <algorithm>

#include "abm/errors.hpp"

namespace abm {

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::constant(const Rational& c) { return RatPoly({c}); }

RatPoly RatPoly::x_minus(const Rational& r) { return RatPoly({-r, 1}); }

RatPoly RatPoly::from_roots(const std::vector<Rational>& roots) {
    RatPoly p = constant(1);
    for (const auto& r : roots) p = p * x_minus(r);
    return p;
}

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::eval(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    std::vector<Rational> c = c_;
    Rational lc = leading();
    for (auto& v : c) v /= lc;
    return RatPoly(std::move(c));
}

RatPoly RatPoly::derivative() const {
    std::vector<Rational> c;
    for (int j = 1; j <= degree(); ++j) c.push_back(j * c_[j]);
    return RatPoly(std::move(c));
}

RatPoly RatPoly::shifted(const Rational& m) const {
    // Horner in (x - m).
    RatPoly acc;
    RatPoly lin = x_minus(m);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return RatPoly(std::move(c));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return RatPoly(std::move(c));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(c));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<Rational> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {RatPoly(), a};
    std::vector<Rational> q(a.degree() - db + 1);
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        Rational f = r[i] / b.leading();
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeff(j);
    }
    r.resize(db);
    return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = divmod(x, y).second;
        x = y;
        y = r.monic();
    }
    return x.monic();
}

RatPoly squarefree_part(const RatPoly& p) {
    if (p.degree() <= 0) return p.monic();
    RatPoly g = gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

namespace {

int sign_of(const Rational& r) { return sgn(r); }

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RatPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(RatPoly() - r);
    }
    return chain;
}

int variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int count = 0, last = 0;
    for (const auto& q : chain) {
        int s = sign_of(q.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

// Simplest (smallest denominator) rational in the closed interval [lo, hi].
Rational simplest_between(Rational lo, Rational hi) {
    if (lo <= 0 && hi >= 0) return 0;
    if (hi < 0) return -simplest_between(-hi, -lo);
    Integer fl = floor_of(lo);
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
    return Rational(fl) + 1 / inner;
}

struct Isolator {
    const RatPoly& p;
    std::vector<RatPoly> chain;
    Rational resolution;  // below this width a single rational candidate remains
    std::vector<Rational> found;
    bool irrational = false;

    // Roots of p in the half-open interval (lo, hi].
    void run(Rational lo, Rational hi) {
        int n = variations(chain, lo) - variations(chain, hi);
        if (n == 0) return;
        if (n == 1) {
            refine(lo, hi);
            return;
        }
        Rational mid = (lo + hi) / 2;
        run(lo, mid);
        run(mid, hi);
    }

    void refine(Rational lo, Rational hi) {
        while (true) {
            if (p.eval(hi) == 0) {
                found.push_back(hi);
                return;
            }
            Rational cand = simplest_between(lo, hi);
            if (cand != lo && p.eval(cand) == 0) {
                found.push_back(cand);
                return;
            }
            if (hi - lo < resolution) {
                irrational = true;
                return;
            }
            Rational mid = (lo + hi) / 2;
            if (variations(chain, lo) - variations(chain, mid) == 1)
                hi = mid;
            else
                lo = mid;
        }
    }
};

}  // namespace

RationalRoots rational_roots(const RatPoly& p) {
    RationalRoots out;
    if (p.degree() <= 0) return out;
    RatPoly sf = squarefree_part(p);

    // Integer leading coefficient of the primitive integer multiple of sf.
    Integer lcm_den = 1;
    for (const auto& c : sf.coeffs()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    Integer content = 0;
    for (const auto& c : sf.coeffs()) {
        Integer v = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    Integer lc = abs(sf.leading().get_num() * (lcm_den / sf.leading().get_den()) / content);

    Rational bound = 1;
    for (int j = 0; j < sf.degree(); ++j) bound = std::max(bound, Rational(abs(sf.coeff(j)) + 1));

    Isolator iso{sf, sturm_chain(sf), Rational(1, Integer(lc * lc * 2)), {}, false};
    iso.run(-bound - 1, bound + 1);

    std::sort(iso.found.begin(), iso.found.end());
    RatPoly rest = p.monic();
    for (const auto& r : iso.found) {
        RatPoly lin = RatPoly::x_minus(r);
        while (rest.degree() > 0) {
            auto [q, rem] = divmod(rest, lin);
            if (!rem.is_zero()) break;
            out.roots.push_back(r);
            rest = q;
        }
    }
    out.unresolved_degree = rest.degree();
    return out;
}

std::vector<Rational> split_roots(const RatPoly& p) {
    RationalRoots rr = rational_roots(p);
    if (rr.unresolved_degree > 0)
        throw NonGeometric("polynomial does not split over the rationals");
    return rr.roots;
}

}  // namespace abm
