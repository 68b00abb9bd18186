#include "abm/fresco.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "abm/errors.hpp"
#include "abm/monodromy.hpp"

namespace abm {

namespace {

// (x + q)(x + q + 1) ... (x + q + p - 1)
RatPoly rising(int q, int p) {
    RatPoly r = RatPoly::constant(1);
    for (int i = 0; i < p; ++i) r = r * RatPoly::x_minus(Rational(-(q + i)));
    return r;
}

AbOperator drop_weight(const AbOperator& x, int w) {
    AbOperator out(x.b_order);
    for (const auto& [pq, c] : x.terms)
        if (pq.first + pq.second < w) out.terms.emplace(pq, c);
    return out;
}

// Right factor (a - lambda b) T of x, where x has a-degree j, lowest weight
// j and is known below weight w. The map sending the generator to S e in
// E_lambda, T = S^{-1}, is solved order by order: a b^n e = (lambda + n) b^{n+1} e.
struct Peel {
    LinearFactor factor;
    AbOperator quotient;
};

Peel peel(const AbOperator& x, int j, int w) {
    const int len = w - j;
    if (len < 1) throw PrecisionExhausted("annihilator_of: no precision left for the unit factors");
    int low = w;
    for (const auto& [pq, c] : x.terms) low = std::min(low, pq.first + pq.second);
    if (low < j) throw NonGeometric("annihilator_of: the annihilator is not regular");
    // g_t(mu): coefficient of b^{j+t} in x b^n e, with mu = lambda + n.
    std::vector<RatPoly> g(len);
    for (const auto& [pq, c] : x.terms) {
        const auto [p, q] = pq;
        const int t = p + q - j;
        if (t < len) g[t] = g[t] + RatPoly::constant(c) * rising(q, p);
    }
    RationalRoots rr = rational_roots(g[0]);
    if (rr.unresolved_degree != 0 || rr.roots.empty())
        throw NonGeometric("annihilator_of: indicial polynomial does not split over Q");
    const Rational lambda = rr.roots.back();
    TruncSeries s(len);
    s[0] = 1;
    for (int n = 1; n < len; ++n) {
        Rational acc = 0;
        for (int i = 0; i < n; ++i)
            if (s[i] != 0) acc += s[i] * g[n - i].eval(lambda + i);
        s[n] = -acc / g[0].eval(lambda + n);
    }
    TruncSeries t = series_invert(s);
    FactoredDivision dv = divide_factored(x, {{lambda, t.with_order(x.b_order)}});
    for (const auto& [pq, c] : dv.R.terms)
        if (pq.first + pq.second < w - 1)
            throw std::logic_error("annihilator_of: right factor does not divide the relation");
    return {{lambda, t}, drop_weight(dv.Q, w - 1)};
}

Rational max_root(const BernsteinPolynomial& b) {
    if (b.roots.empty()) throw std::logic_error("empty Bernstein polynomial");
    return *std::max_element(b.roots.begin(), b.roots.end());
}

SeriesMatrix row_matrix(const ModuleVector& v) {
    SeriesMatrix m(1, static_cast<int>(v.size()), v[0].order());
    for (std::size_t i = 0; i < v.size(); ++i) m(0, static_cast<int>(i)) = v[i];
    return m;
}

ModuleVector truncated(const ModuleVector& v, int n) {
    ModuleVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].with_order(n);
    return out;
}

}  // namespace

FactoredFresco::FactoredFresco(std::vector<LinearFactor> factors) : f_(std::move(factors)) {
    const int k = rank();
    for (int j = 1; j <= k; ++j) {
        const LinearFactor& lf = f_[j - 1];
        if (!lf.T.is_unit()) throw NonUnit("fresco factor with a non-invertible unit");
        if (lf.T.order() != f_[0].T.order()) throw OrderMismatch("fresco factors of different orders");
        if (!(lf.lambda + j > k)) throw NonGeometric("fresco is not geometric: lambda_j + j <= k");
    }
}

int FactoredFresco::order() const { return f_.empty() ? kDefaultOrder : f_[0].T.order(); }

std::vector<Rational> FactoredFresco::lambdas() const {
    std::vector<Rational> out;
    for (const auto& f : f_) out.push_back(f.lambda);
    return out;
}

AbOperator FactoredFresco::presentation() const { return factored_product(f_, order()); }

FrescoModule fresco_to_module(const FactoredFresco& f) {
    const int k = f.rank(), n = f.order();
    SeriesMatrix a(k, k, n);
    // a u_j = (l_j b - b^2 T_j'/T_j) u_j + T_j^{-1} u_{j-1}, u_j at index j-1.
    for (int j = 1; j <= k; ++j) {
        const LinearFactor& lf = f.factors()[j - 1];
        TruncSeries inv = series_invert(lf.T);
        a(j - 1, j - 1) = TruncSeries::monomial(lf.lambda, 1, n) - series_mul(b2_derive(lf.T), inv);
        if (j >= 2) a(j - 1, j - 2) = inv;
    }
    return {ModulePresentation(a), basis_vector(k, k - 1, n)};
}

FactoredFresco annihilator_of(const ModulePresentation& e, const ModuleVector& x) {
    const int k = e.rank(), n = e.order();
    SeriesMatrix it(k, k, n);
    ModuleVector v = x;
    for (int m = 0; m < k; ++m) {
        for (int i = 0; i < k; ++i) it(m, i) = v[i];
        v = apply_a(e, v);
    }
    const int r = smith(it).rank();
    if (r == 0) throw InvalidArgument("annihilator_of: zero vector");
    SeriesMatrix rows = it.block(0, 0, r, k);
    v = x;
    for (int m = 0; m < r; ++m) v = apply_a(e, v);
    SeriesVector c;
    try {
        c = coordinates(rows, v);
    } catch (const InvalidArgument&) {
        throw NonGeometric("annihilator_of: x does not generate a fresco");
    }
    // a^r - sum_m c_m(b) a^m, right normal form, known below weight w.
    const int w = c[0].order();
    RightNormalForm rn;
    rn.b_order = w;
    rn.add(r, 0, 1);
    for (int m = 0; m < r; ++m)
        for (int q = 0; q < w; ++q)
            if (c[m][q] != 0) rn.add(m, q, -c[m][q]);
    AbOperator op = drop_weight(to_left(rn), w);
    std::vector<LinearFactor> rev;
    for (int j = r; j >= 1; --j) {
        Peel p = peel(op, j, w - (r - j));
        rev.push_back(p.factor);
        op = p.quotient;
    }
    std::reverse(rev.begin(), rev.end());
    return FactoredFresco(std::move(rev));
}

AbOperator bernstein_element(const FactoredFresco& f) {
    const int n = f.order();
    AbOperator p = op_scalar(1, n);
    for (const auto& lf : f.factors()) p = p * op_linear(lf.lambda, n);
    return p;
}

BernsteinPolynomial bernstein_fresco(const FactoredFresco& f) {
    const int k = f.rank();
    BernsteinPolynomial b;
    for (int j = 1; j <= k; ++j) b.roots.push_back(-(f.factors()[j - 1].lambda + j - k));
    std::sort(b.roots.begin(), b.roots.end());
    return b;
}

namespace {

std::vector<Rational> classes_of(const FactoredFresco& f) {
    std::vector<Rational> classes;
    for (const auto& l : f.lambdas()) classes.push_back(spectral_class(l));
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

// The c-part of the saturation of F with the projection of the generator,
// and the same for the other classes. F^[c] is the submodule generated by
// the projection.
struct ClassSplit {
    Rational cls;
    ModulePresentation mine, rest;
    ModuleVector ymine, yrest;
};

std::vector<ClassSplit> split_classes(const FrescoModule& fm, const std::vector<Rational>& classes) {
    Saturation sat = saturate(fm.module);
    PrimitiveDecomposition dec = decompose_primitive(sat.sharp);
    const int n = dec.T.order();
    SeriesVector y = row_times(truncated(fm.generator, n), sat.inclusion.with_order(n));
    y = row_times(y, invert(dec.T));
    std::vector<ClassSplit> out;
    for (const Rational& c : classes) {
        ClassSplit cs{c, {}, {}, {}, {}};
        for (const auto& part : dec.parts) {
            const bool is_mine = part.cls == c;
            ModulePresentation& dst = is_mine ? cs.mine : cs.rest;
            dst = dst.rank() == 0 ? part.module : direct_sum(dst, part.module);
            ModuleVector& yd = is_mine ? cs.ymine : cs.yrest;
            for (int i = 0; i < part.module.rank(); ++i) yd.push_back(y[part.offset + i]);
        }
        out.push_back(std::move(cs));
    }
    return out;
}

}  // namespace

std::vector<PrimitiveFresco> primitive_parts(const FactoredFresco& f) {
    const std::vector<Rational> classes = classes_of(f);
    if (classes.size() == 1) return {{classes[0], f, f}};

    // F_[c] is generated by P' x, where P' annihilates the projection of x
    // to the other classes.
    FrescoModule fm = fresco_to_module(f);
    std::vector<PrimitiveFresco> out;
    for (const auto& cs : split_classes(fm, classes)) {
        FactoredFresco quotient = annihilator_of(cs.mine, cs.ymine);
        AbOperator other = annihilator_of(cs.rest, cs.yrest).presentation();
        const int m = other.b_order;
        ModulePresentation em = with_order(fm.module, m);
        ModuleVector gen = apply_op(em, other, truncated(fm.generator, m));
        out.push_back({cs.cls, annihilator_of(em, gen), std::move(quotient)});
    }
    BernsteinPolynomial prod;
    for (const auto& p : out) prod = prod * bernstein_fresco(p.quotient);
    if (!(prod == bernstein_fresco(f)))
        throw std::logic_error("primitive_parts: Bernstein polynomials of the parts do not multiply to B_F");
    return out;
}

CharSequence principal_jh(const FactoredFresco& f) {
    const int k = f.rank();
    std::vector<Rational> v;
    for (int j = 1; j <= k; ++j) {
        const Rational& l = f.factors()[j - 1].lambda;
        if (spectral_class(l) != spectral_class(f.factors()[0].lambda))
            throw InvalidArgument("principal_jh: fresco is not primitive");
        v.push_back(l + j);
    }
    std::stable_sort(v.begin(), v.end());
    CharSequence out;
    out.principal = true;
    for (int j = 1; j <= k; ++j) out.values.push_back(v[j - 1] - j);
    return out;
}

bool is_semisimple_fresco(const FactoredFresco& f) {
    std::map<Rational, std::vector<Rational>> by_class;
    for (int j = 1; j <= f.rank(); ++j) {
        const Rational& l = f.factors()[j - 1].lambda;
        by_class[spectral_class(l)].push_back(l + j);
    }
    for (auto& [c, v] : by_class) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
    }
    return nilpotent_order(fresco_to_module(f).module) == 1;
}

namespace {

// S_j of a module e given with its saturation: basis holds the rows of a
// basis of e in the coordinates of sharp.
FiltrationResult filtration_via(const ModulePresentation& e, const ModulePresentation& sharp, const SeriesMatrix& basis) {
    FiltrationResult out;
    int prev = 0;
    out.order = e.order();
    for (const auto& l : semisimple_filtration(sharp).steps) {
        Lattice s = normalize(preimage(l, basis.with_order(l.order())));
        const int r = lattice_rank(s);
        out.steps.push_back(s);
        out.ranks.push_back(r - prev);
        out.order = std::min(out.order, s.order());
        prev = r;
    }
    if (prev != e.rank()) throw PrecisionExhausted("higher_bernstein: kernels do not exhaust the module");
    out.d = static_cast<int>(out.steps.size());
    return out;
}

// B_j of a primitive fresco given as a module: Bernstein polynomial of
// S_j / S_{j-1}, with roots moved up by rank(F / S_j).
std::vector<BernsteinPolynomial> primitive_higher(const ModulePresentation& e, const FiltrationResult& fr) {
    const int k = e.rank();
    std::vector<BernsteinPolynomial> out;
    int below = 0;
    for (int j = 0; j < fr.d; ++j) {
        const Lattice& sj = fr.steps[j];
        SubmoduleBasis sb = submodule(with_order(e, sj.order()), sj);
        ModulePresentation q = sb.module;
        if (j > 0) {
            const int n = std::min(fr.steps[j - 1].order(), sb.module.order());
            Lattice prev = normalize(preimage(Lattice(fr.steps[j - 1].generators.with_order(n)), sb.basis.with_order(n)));
            q = adapted_split(with_order(sb.module, prev.order()), prev).quotient;
        }
        below += fr.ranks[j];
        out.push_back(bernstein_char(q).shifted(k - below));
    }
    return out;
}

// Per class, the higher Bernstein polynomials of F^[c]. F^[c] is taken as
// the submodule generated by the projected generator, whose saturation is
// the c-part of the saturation of F; this avoids re-presenting it as a
// fresco and saturating again.
std::vector<std::pair<Rational, std::vector<BernsteinPolynomial>>> class_higher(const FactoredFresco& f) {
    const std::vector<Rational> classes = classes_of(f);
    FrescoModule fm = fresco_to_module(f);
    std::vector<std::pair<Rational, std::vector<BernsteinPolynomial>>> out;
    if (classes.size() == 1) {
        Saturation sat = saturate(fm.module);
        const FiltrationResult fr = filtration_via(fm.module, sat.sharp, sat.inclusion.with_order(sat.sharp.order()));
        out.emplace_back(classes[0], primitive_higher(fm.module, fr));
    } else {
        for (const auto& cs : split_classes(fm, classes)) {
            SubmoduleBasis sb = submodule(cs.mine, generated_submodule(cs.mine, row_matrix(cs.ymine)));
            const FiltrationResult fr = filtration_via(sb.module, cs.mine, sb.basis);
            out.emplace_back(cs.cls, primitive_higher(sb.module, fr));
        }
    }
    // B_F is the product over classes and over j.
    BernsteinPolynomial prod;
    for (const auto& [c, h] : out)
        for (const auto& b : h) prod = prod * b;
    if (!(prod == bernstein_fresco(f)))
        throw std::logic_error("higher_bernstein: product of the B_j differs from B_F");
    return out;
}

}  // namespace

std::vector<BernsteinPolynomial> higher_bernstein(const FactoredFresco& f) {
    std::vector<BernsteinPolynomial> out;
    for (const auto& [c, h] : class_higher(f)) {
        if (h.size() > out.size()) out.resize(h.size());
        for (std::size_t j = 0; j < h.size(); ++j) out[j] = out[j] * h[j];
    }
    return out;
}

PoleReport pole_report(const FactoredFresco& f) {
    PoleReport rep;
    const BernsteinPolynomial bf = bernstein_fresco(f);
    for (auto& [c, h] : class_higher(f)) {
        ClassPoles cp;
        cp.cls = c;
        cp.higher = std::move(h);
        cp.d = static_cast<int>(cp.higher.size());
        cp.top_pole = max_root(cp.higher.back());
        BernsteinPolynomial mine;
        for (const auto& r : bf.roots)
            if (spectral_class(-r) == c) mine.roots.push_back(r);
        cp.first_pole = max_root(mine);
        for (int j = 0; j < cp.d; ++j) {
            std::vector<Rational> pts;
            for (int i = j; i < cp.d; ++i)
                for (const auto& r : cp.higher[i].roots) pts.push_back(r);
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            cp.candidates.push_back(std::move(pts));
        }
        rep.classes.push_back(std::move(cp));
    }
    return rep;
}

}  // namespace abm
