#pragma once

// Frescos: (a,b)-modules with a distinguished generator, presented by a
// factored annihilator (a - l1 b) T1 ... (a - lk b) Tk.

#include <vector>

#include "abm/abalg.hpp"
#include "abm/module.hpp"

namespace abm {

class FactoredFresco {
public:
    FactoredFresco() = default;
    // Throws NonGeometric unless l_j + j > k for every j, NonUnit when some
    // T_j is not invertible.
    explicit FactoredFresco(std::vector<LinearFactor> factors);

    const std::vector<LinearFactor>& factors() const { return f_; }
    int rank() const { return static_cast<int>(f_.size()); }
    int order() const;
    std::vector<Rational> lambdas() const;
    AbOperator presentation() const;  // the product P

private:
    std::vector<LinearFactor> f_;
};

struct FrescoModule {
    ModulePresentation module;
    ModuleVector generator;
};
// Basis u_1..u_k with u_k the generator and u_{j-1} = (a - l_j b) T_j u_j.
FrescoModule fresco_to_module(const FactoredFresco& f);

// Factored generator of the annihilator of x in the fresco it generates.
// Unit factors have constant term 1; the result order drops by the rank
// plus the precision spent on coordinates.
FactoredFresco annihilator_of(const ModulePresentation& e, const ModuleVector& x);

// (a - l1 b) ... (a - lk b), the initial form of P.
AbOperator bernstein_element(const FactoredFresco& f);
// Roots -(l_j + j - k).
BernsteinPolynomial bernstein_fresco(const FactoredFresco& f);

struct PrimitiveFresco {
    Rational cls;
    FactoredFresco sub;       // F_[cls], the largest cls-primitive submodule
    FactoredFresco quotient;  // F^[cls] = F / F_[!= cls]
};
// One entry per class, ascending.
std::vector<PrimitiveFresco> primitive_parts(const FactoredFresco& f);

struct CharSequence {
    std::vector<Rational> values;
    bool principal = false;
};
// Requires a single class; throws InvalidArgument otherwise.
CharSequence principal_jh(const FactoredFresco& f);

bool is_semisimple_fresco(const FactoredFresco& f);

// B_1 ... B_d with B_j(F) = prod over classes of B_j(F^[cls]).
std::vector<BernsteinPolynomial> higher_bernstein(const FactoredFresco& f);

// Prediction under the isolated-singularity hypothesis for each class; no
// integral is evaluated.
struct ClassPoles {
    Rational cls;
    int d = 0;
    std::vector<BernsteinPolynomial> higher;  // B_1 .. B_d of F^[cls]
    Rational top_pole;                        // biggest root of B_d, order d
    Rational first_pole;                      // biggest root of B_{F^[cls]}
    // candidates[j - 1]: roots of B_j .. B_d, the possible points of a pole
    // of order at least j.
    std::vector<std::vector<Rational>> candidates;
};
struct PoleReport {
    std::vector<ClassPoles> classes;
};
PoleReport pole_report(const FactoredFresco& f);

}  // namespace abm
