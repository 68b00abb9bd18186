#pragma once

// Finite-rank (a,b)-modules presented over truncated B.

#include <vector>

#include "abm/abalg.hpp"
#include "abm/lattice.hpp"
#include "abm/poly.hpp"
#include "abm/smatrix.hpp"

namespace abm {

// a e_i = sum_j amat(i, j) e_j; a acts on B-multiples by a(Sx) = S ax + b^2 S' x.
struct ModulePresentation {
    SeriesMatrix amat;

    ModulePresentation() = default;
    explicit ModulePresentation(SeriesMatrix a);

    int rank() const { return amat.rows(); }
    int order() const { return amat.order(); }
};

using ModuleVector = SeriesVector;

// Monic polynomial prod (x - r) stored by its roots, ascending.
struct BernsteinPolynomial {
    std::vector<Rational> roots;

    RatPoly polynomial() const { return RatPoly::from_roots(roots); }
    BernsteinPolynomial shifted(const Rational& m) const;  // B(x - m)
    friend bool operator==(const BernsteinPolynomial&, const BernsteinPolynomial&) = default;
};
BernsteinPolynomial operator*(const BernsteinPolynomial& x, const BernsteinPolynomial& y);

ModuleVector basis_vector(int k, int i, int order);
ModulePresentation with_order(const ModulePresentation& e, int order);  // truncates or zero-pads

ModuleVector apply_a(const ModulePresentation& e, const ModuleVector& x);
SeriesMatrix apply_a_rows(const ModulePresentation& e, const SeriesMatrix& rows);
ModuleVector apply_op(const ModulePresentation& e, const AbOperator& x, const ModuleVector& v);

bool is_simple_pole(const ModulePresentation& e);
// F with amat = b F; order drops by one.
SeriesMatrix pole_matrix(const ModulePresentation& e);

ModulePresentation make_E_theta(const QMatrix& theta, int order);
ModulePresentation make_E(const Rational& lambda, int order);
// Rank n+1, a e_j = alpha b e_j + b e_{j-1}.
ModulePresentation make_xi(const Rational& alpha, int n, int order);
ModulePresentation direct_sum(const ModulePresentation& x, const ModulePresentation& y);
ModulePresentation tensor(const ModulePresentation& x, const ModulePresentation& y);

// Presentation in the basis e' = T e (T invertible).
ModulePresentation change_basis(const ModulePresentation& e, const SeriesMatrix& t);
// Coordinates c with c * rows = v; throws InvalidArgument when v is outside the span.
SeriesVector coordinates(const SeriesMatrix& rows, const SeriesVector& v);
// Presentation of the a-stable lattice l in the basis of its Smith generators.
struct SubmoduleBasis {
    ModulePresentation module;
    SeriesMatrix basis;  // rows in ambient coordinates
};
SubmoduleBasis submodule(const ModulePresentation& e, const Lattice& l);
// For a normal a-stable lattice: basis change putting l first, the
// submodule and the quotient.
struct Adapted {
    SeriesMatrix basis;  // rows of the new basis in old coordinates
    SeriesMatrix inverse;
    ModulePresentation whole, sub, quotient;
};
Adapted adapted_split(const ModulePresentation& e, const Lattice& normal_sub);

// Unique x with (a - lambda b) x = b y; order min(y.order, N - 1).
ModuleVector solve_shifted(const ModulePresentation& e, const Rational& lambda, const ModuleVector& y);

// E with amat = b [[F, 0], [H, G]], F of size kf. New basis (e, eps + Z e)
// makes the a-action block diagonal.
struct Split {
    SeriesMatrix Z;  // order N - 1
    ModulePresentation split;
};
Split split_extension(const ModulePresentation& e, int kf);

// Constant base change grouping the generalized eigenspaces of F_0.
struct SpectralBlock {
    Rational lambda;
    int offset = 0, size = 0;
};
struct Spectral {
    QMatrix P, Pinv, J;  // J = P F_0 Pinv, block diagonal
    std::vector<SpectralBlock> blocks;
};
Rational spectral_class(const Rational& lambda);  // representative in (0, 1]
Spectral spectral_blocks(const QMatrix& f0);

// Gauge G = I + O(b) with (G F_tilde + b G') G^{-1} = Fn, F_tilde = P F Pinv.
// full: remove every block (l, m) at b^n with l - m != n; otherwise only
// blocks of different classes.
struct GaugeForm {
    Spectral spec;
    SeriesMatrix G, Fn, T;  // T = G P; all of order N - 1
};
GaugeForm gauge_form(const SeriesMatrix& f, bool full);

struct PrimitivePart {
    Rational cls;
    int offset = 0;
    ModulePresentation module;
};
struct PrimitiveDecomposition {
    std::vector<PrimitivePart> parts;
    SeriesMatrix T;  // rows of the adapted basis in original coordinates
};
PrimitiveDecomposition decompose_primitive(const ModulePresentation& e);

struct Saturation {
    ModulePresentation sharp;
    SeriesMatrix inclusion;  // row i: e_i in the basis of the saturation
    int codim = 0;
    int shift = 0;
};
Saturation saturate(const ModulePresentation& e);

BernsteinPolynomial bernstein_min(const ModulePresentation& e);
BernsteinPolynomial bernstein_char(const ModulePresentation& e);

// B[a]-submodule generated by the rows of gens.
Lattice generated_submodule(const ModulePresentation& e, const SeriesMatrix& gens);

Lattice normalize_submodule(const ModulePresentation& e, const Lattice& l);
bool is_a_stable(const ModulePresentation& e, const Lattice& l);

// Rows eps_1..eps_k with a eps_j = lambda b eps_j + b eps_{j+1}; order N - 1.
SeriesMatrix jordan_chain(const ModulePresentation& e, const Rational& lambda, int k);

}  // namespace abm
