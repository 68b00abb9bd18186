#include "abm/monodromy.hpp"

#include <algorithm>
#include <stdexcept>

#include "abm/errors.hpp"

namespace abm {

QMatrix level_matrix(const SeriesMatrix& op, int levels) {
    const int k = op.rows();
    if (levels > op.order()) throw PrecisionExhausted("level_matrix: not enough precision");
    QMatrix out(k * levels, k * levels);
    for (int m = 0; m < levels; ++m)
        for (int n = 0; m + n < levels; ++n)
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    if (op(i, j)[n] != 0) out(m * k + i, (m + n) * k + j) = op(i, j)[n];
    return out;
}

QMatrix b_matrix(int k, int levels) {
    QMatrix out(k * levels, k * levels);
    for (int m = 0; m + 1 < levels; ++m)
        for (int i = 0; i < k; ++i) out(m * k + i, (m + 1) * k + i) = 1;
    return out;
}

QMatrix u_matrix(const ModulePresentation& e, int levels) {
    QMatrix u = level_matrix(pole_matrix(e), levels);
    const int k = e.rank();
    for (int m = 0; m < levels; ++m)
        for (int i = 0; i < k; ++i) u(m * k + i, m * k + i) += m;
    return u;
}

NilpotentPart nilpotent_part(const ModulePresentation& e) {
    GaugeForm g = gauge_form(pole_matrix(e), true);
    const int k = e.rank(), n1 = g.Fn.order();
    NilpotentPart out;
    out.T = g.T;
    for (const auto& blk : g.spec.blocks)
        for (int i = 0; i < blk.size; ++i) {
            out.lambda.push_back(blk.lambda);
            Rational shift = blk.lambda - spectral_class(blk.lambda);
            out.m.push_back(static_cast<int>(shift.get_num().get_si()));
        }
    // In the gauge basis the nilpotent part is Fn - diag(lambda).
    SeriesMatrix m = g.Fn;
    for (int i = 0; i < k; ++i) m(i, i)[0] -= out.lambda[i];
    out.Mhat = QMatrix(k, k);
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) {
            const TruncSeries& s = m(i, l);
            if (s.is_zero()) continue;
            const int sh = out.m[i] - out.m[l];
            if (sh < 0 || s.valuation() != sh || TruncSeries::monomial(s[sh], sh, n1) != s)
                throw std::logic_error("nilpotent_part: gauge form is not twisted-constant");
            out.Mhat(i, l) = s[sh];
        }
    out.N = invert(g.T) * m * g.T;
    return out;
}

QMatrix nilpotent_part_dense(const ModulePresentation& e, int levels, bool parallel) {
    return jordan_chevalley(u_matrix(e, levels), parallel).nilpotent;
}

namespace {

// S_j of a simple-pole module, in its own coordinates.
std::vector<Lattice> simple_pole_steps(const ModulePresentation& e) {
    NilpotentPart np = nilpotent_part(e);
    const int k = e.rank(), n1 = np.T.order();
    const int mmax = *std::max_element(np.m.begin(), np.m.end());
    const int mmin = *std::min_element(np.m.begin(), np.m.end());
    if (mmax - mmin >= n1) throw PrecisionExhausted("semisimple_filtration: spectrum spread exceeds the order");
    std::vector<Lattice> steps;
    QMatrix pw = QMatrix::identity(k);
    for (int j = 1; j <= k; ++j) {
        pw = pw * np.Mhat;
        QMatrix z = left_kernel(pw);
        SeriesMatrix y(z.rows(), k, n1);
        for (int r = 0; r < z.rows(); ++r)
            for (int i = 0; i < k; ++i)
                if (z(r, i) != 0) y(r, i) = TruncSeries::monomial(z(r, i), mmax - np.m[i], n1);
        steps.push_back(normalize(Lattice(y * np.T)));
        if (z.rows() == k) break;
    }
    return steps;
}

FiltrationResult filtration_at(const ModulePresentation& e) {
    const int k = e.rank();
    std::vector<Lattice> steps;
    if (is_simple_pole(e)) {
        steps = simple_pole_steps(e);
    } else {
        Saturation s = saturate(e);
        for (const auto& l : simple_pole_steps(s.sharp)) steps.push_back(normalize(preimage(l, s.inclusion.with_order(l.order()))));
    }
    FiltrationResult out;
    int prev = 0;
    for (const auto& l : steps) {
        const int r = lattice_rank(l);
        out.steps.push_back(l);
        out.ranks.push_back(r - prev);
        prev = r;
        if (r == k) break;
    }
    if (prev != k) throw PrecisionExhausted("semisimple_filtration: kernels do not exhaust the module");
    out.d = static_cast<int>(out.steps.size());
    out.order = e.order();
    for (const auto& l : out.steps) out.order = std::min(out.order, l.order());
    return out;
}

}  // namespace

FiltrationResult semisimple_filtration(const ModulePresentation& e) {
    FiltrationResult r = filtration_at(e);
    FiltrationResult up = filtration_at(with_order(e, e.order() + 1));
    bool same = r.ranks == up.ranks;
    for (std::size_t j = 0; same && j < r.steps.size(); ++j)
        same = same_lattice(r.steps[j], up.steps[j]);
    if (!same) throw PrecisionExhausted("semisimple_filtration: result changes at order N+1");
    return r;
}

int nilpotent_order(const ModulePresentation& e) { return semisimple_filtration(e).d; }

namespace {

// Constant C (rows: class block, cols: Xi basis x_0..x_depth) with
// Mhat C = C S, S x_j = x_{j-1}; the solutions as flattened rows.
QMatrix intertwiners(const QMatrix& mhat, int depth) {
    const int k = mhat.rows(), w = depth + 1;
    QMatrix eq(k * w, k * w);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < w; ++j) {
            for (int l = 0; l < k; ++l) eq(i * w + j, l * w + j) += mhat(i, l);
            if (j + 1 < w) eq(i * w + j, i * w + j + 1) -= 1;
        }
    return right_kernel(eq);
}

XiEmbedding embed_simple_pole(const ModulePresentation& e) {
    NilpotentPart np = nilpotent_part(e);
    const int k = e.rank(), n1 = np.T.order();
    for (int m : np.m)
        if (m < 0) throw NonGeometric("embed_in_xi: eigenvalue below its class");
    int d = 1;
    for (QMatrix p = np.Mhat; !p.is_zero(); p = p * np.Mhat) ++d;
    const int w = d;
    XiEmbedding out;
    out.depth = d - 1;
    // Twisted basis eps_i = b^{-m_i} e''_i; images of e''_i are b^{m_i} C_i.
    std::vector<std::vector<Rational>> cols;  // per copy, flattened k x w image of eps
    for (int i = 0; i < k;) {
        const Rational cls = np.lambda[i] - np.m[i];
        int end = i;
        while (end < k && np.lambda[end] - np.m[end] == cls) ++end;
        const int kc = end - i;
        QMatrix sol = intertwiners(np.Mhat.block(i, i, kc, kc), out.depth);
        QMatrix chosen(kc, 0);
        int have = 0;
        while (have < kc) {
            int best = -1, gain = 0;
            QMatrix best_m;
            for (int s = 0; s < sol.rows(); ++s) {
                QMatrix cand(kc, chosen.cols() + w);
                cand.set_block(0, 0, chosen);
                for (int r = 0; r < kc; ++r)
                    for (int j = 0; j < w; ++j) cand(r, chosen.cols() + j) = sol(s, r * w + j);
                const int g = rank(cand) - have;
                if (g > gain) best = s, gain = g, best_m = cand;
            }
            if (best < 0) throw std::logic_error("embed_in_xi: intertwiners do not reach full rank");
            chosen = best_m;
            have += gain;
            out.copies.push_back(cls);
            std::vector<Rational> flat(static_cast<std::size_t>(k) * w);
            for (int r = 0; r < kc; ++r)
                for (int j = 0; j < w; ++j) flat[(i + r) * w + j] = sol(best, r * w + j);
            cols.push_back(std::move(flat));
        }
        i = end;
    }
    const int nc = static_cast<int>(cols.size());
    SeriesMatrix img(k, nc * w, n1);
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < w; ++j)
                if (cols[c][i * w + j] != 0)
                    img(i, c * w + j) = TruncSeries::monomial(cols[c][i * w + j], np.m[i], n1);
    out.map = invert(np.T) * img;
    for (int c = 0; c < nc; ++c) {
        ModulePresentation x = make_xi(out.copies[c], out.depth, n1);
        out.target = c == 0 ? x : direct_sum(out.target, x);
    }
    return out;
}

}  // namespace

XiEmbedding embed_in_xi(const ModulePresentation& e) {
    if (is_simple_pole(e)) return embed_simple_pole(e);
    Saturation s = saturate(e);
    XiEmbedding out = embed_simple_pole(s.sharp);
    const int n = std::min(out.map.order(), s.inclusion.order());
    out.map = s.inclusion.with_order(n) * out.map.with_order(n);
    out.target = with_order(out.target, n);
    return out;
}

}  // namespace abm
