#pragma once

// Nilpotent part of the monodromy and the semi-simple filtration.

#include <vector>

#include "abm/module.hpp"

namespace abm {

// u = b^{-1}a on E / b^levels E in the basis b^m e_i (index m k + i).
QMatrix u_matrix(const ModulePresentation& e, int levels);
// Matrix of a B-linear endomorphism (rows: images of e_i) on E / b^levels E.
QMatrix level_matrix(const SeriesMatrix& op, int levels);
// Matrix of multiplication by b on E / b^levels E.
QMatrix b_matrix(int k, int levels);

struct NilpotentPart {
    SeriesMatrix N;        // in the original basis, order N - 1
    SeriesMatrix T;        // gauge basis rows e'' = T e
    QMatrix Mhat;          // constant nilpotent in the twisted basis b^{-m_i} e''_i
    std::vector<int> m;    // integer shifts lambda_i - class(lambda_i)
    std::vector<Rational> lambda;
};
NilpotentPart nilpotent_part(const ModulePresentation& e);

// Oracle: nilpotent component of the exact Jordan-Chevalley decomposition of u_matrix.
QMatrix nilpotent_part_dense(const ModulePresentation& e, int levels, bool parallel = false);

struct FiltrationResult {
    std::vector<Lattice> steps;  // S_1 .. S_d
    std::vector<int> ranks;      // rank(S_j / S_{j-1})
    int d = 0;
    int order = 0;
};
FiltrationResult semisimple_filtration(const ModulePresentation& e);
int nilpotent_order(const ModulePresentation& e);

// a-linear injective map E -> direct sum of copies of Xi_c^(depth), one copy
// per Jordan block of the nilpotent part in class c, with depth = d - 1.
// Non-simple-pole input is embedded through its saturation.
struct XiEmbedding {
    ModulePresentation target;
    std::vector<Rational> copies;  // class of each Xi summand
    int depth = 0;
    SeriesMatrix map;  // row i: image of e_i
};
XiEmbedding embed_in_xi(const ModulePresentation& e);

}  // namespace abm
