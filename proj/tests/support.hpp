#pragma once

// Shared test helpers: deterministic random inputs and independent oracles.

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "abm/abalg.hpp"
#include "abm/fresco.hpp"
#include "abm/series.hpp"

namespace abm::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20261018);
    return g;
}

inline int rand_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational rand_rational(int num = 9, int den = 4) {
    Rational r(rand_int(-num, num), rand_int(1, den));
    r.canonicalize();
    return r;
}

inline TruncSeries rand_series(int order, int density = 2) {
    TruncSeries s(order);
    for (int j = 0; j < order; ++j)
        if (rand_int(0, density) == 0) s[j] = rand_rational();
    return s;
}

inline TruncSeries rand_unit(int order) {
    TruncSeries s = rand_series(order);
    s[0] = 1;
    return s;
}

inline AbOperator rand_operator(int order, int max_a, int terms = 6, int max_b = 4) {
    AbOperator x(order);
    for (int t = 0; t < terms; ++t) x.add(rand_int(0, max_a), rand_int(0, max_b), rand_rational());
    return x;
}

// Words in the letters a, b with rational coefficients; the oracle rewrites
// ab -> ba + bb (or ba -> ab - bb) until no rule applies.
using WordPoly = std::map<std::string, Rational>;

inline WordPoly rewrite(WordPoly in, bool to_right, int b_order) {
    const std::string lhs = to_right ? "ab" : "ba";
    const std::string swapped = to_right ? "ba" : "ab";
    const Rational sign = to_right ? 1 : -1;
    WordPoly done;
    while (!in.empty()) {
        auto node = in.extract(in.begin());
        const std::string& w = node.key();
        Rational c = node.mapped();
        if (std::count(w.begin(), w.end(), 'b') >= b_order || c == 0) continue;
        auto pos = w.find(lhs);
        if (pos == std::string::npos) {
            done[w] += c;
            continue;
        }
        std::string w1 = w.substr(0, pos) + swapped + w.substr(pos + 2);
        std::string w2 = w.substr(0, pos) + "bb" + w.substr(pos + 2);
        in[w1] += c;
        in[w2] += sign * c;
    }
    std::erase_if(done, [](const auto& kv) { return kv.second == 0; });
    return done;
}

inline std::string word(int p, int q, bool a_first) {
    return a_first ? std::string(p, 'a') + std::string(q, 'b') : std::string(q, 'b') + std::string(p, 'a');
}

inline WordPoly words_of(const TermMap& t, bool a_first) {
    WordPoly w;
    for (const auto& [e, c] : t) w[word(e.first, e.second, a_first)] += c;
    return w;
}

}  // namespace abm::testing

#include "abm/module.hpp"

namespace abm::testing {

inline SeriesMatrix rand_series_matrix(int r, int c, int order, int density = 2) {
    SeriesMatrix m(r, c, order);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rand_series(order, density);
    return m;
}

inline QMatrix rand_qmatrix(int r, int c, int num = 3) {
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = rand_rational(num, 2);
    return m;
}

inline QMatrix rand_invertible(int k) {
    for (;;) {
        QMatrix m = rand_qmatrix(k, k);
        if (rank(m) == k) return m;
    }
}

inline SeriesMatrix rand_unimodular(int k, int order) {
    SeriesMatrix m = rand_series_matrix(k, k, order);
    QMatrix c0 = rand_invertible(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j)[0] = c0(i, j);
    return m;
}

// Simple-pole module b (P^{-1} Theta P + b R_1 + b^2 R_2) with rational spectrum.
inline ModulePresentation rand_simple_pole(int k, int order, const std::vector<Rational>& spectrum, bool jordan = true) {
    QMatrix theta(k, k);
    for (int i = 0; i < k; ++i) {
        theta(i, i) = spectrum[i];
        if (jordan && i > 0 && spectrum[i] == spectrum[i - 1] && rand_int(0, 1)) theta(i, i - 1) = 1;
    }
    QMatrix p = rand_invertible(k);
    std::vector<QMatrix> coefs{QMatrix(k, k), inverse(p) * theta * p, rand_qmatrix(k, k, 2), rand_qmatrix(k, k, 2)};
    return ModulePresentation(SeriesMatrix::from_coefs(coefs, order));
}

inline SeriesMatrix rows_of(const std::vector<ModuleVector>& v) {
    SeriesMatrix m(static_cast<int>(v.size()), static_cast<int>(v[0].size()), v[0][0].order());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = v[i][j];
    return m;
}

inline TruncSeries ser(std::initializer_list<Rational> c, int order) { return TruncSeries(order, std::vector<Rational>(c)); }

// Rank-2 module with ax = (alpha+p-1) b x + (1 + b^p) y, ay = alpha b y.
inline ModulePresentation witness(const Rational& alpha, int p, int order) {
    SeriesMatrix a(2, 2, order);
    a(0, 0) = TruncSeries::monomial(alpha + p - 1, 1, order);
    a(0, 1) = TruncSeries::constant(1, order) + TruncSeries::monomial(1, p, order);
    a(1, 1) = TruncSeries::monomial(alpha, 1, order);
    return ModulePresentation(a);
}

// Admissible fresco: lambda_j = c + (k - j) + r with c drawn from classes
// and r in {0, 1}, so lambda_j + j > k.
inline FactoredFresco rand_fresco(int k, int order, const std::vector<Rational>& classes, bool units = true) {
    std::vector<LinearFactor> f;
    for (int j = 1; j <= k; ++j) {
        Rational c = classes[rand_int(0, static_cast<int>(classes.size()) - 1)];
        f.push_back({c + (k - j) + rand_int(0, 1), units ? rand_unit(order) : TruncSeries::constant(1, order)});
    }
    return FactoredFresco(f);
}

}  // namespace abm::testing
