#pragma once

// B-submodules of (B/b^N)^k given by generator rows.

#include <vector>

#include "abm/smatrix.hpp"

namespace abm {

// U * G * W = diag(b^d_0, ..., b^d_{r-1}, 0, ...) with U, W invertible.
struct SmithForm {
    SeriesMatrix U, W, Winv;
    std::vector<int> d;
    int rank() const { return static_cast<int>(d.size()); }
};

SmithForm smith(const SeriesMatrix& g);

struct Lattice {
    SeriesMatrix generators;  // one generator per row
    bool reduced = false;

    Lattice() = default;
    explicit Lattice(SeriesMatrix gens, bool is_reduced = false)
        : generators(std::move(gens)), reduced(is_reduced) {}
    static Lattice whole(int k, int order);
    static Lattice zero(int k, int order);

    int ambient_rank() const { return generators.cols(); }
    int order() const { return generators.order(); }
    int count() const { return generators.rows(); }
};

struct ShiftedLattice {
    int shift = 0;  // represents b^{-shift} * lattice
    Lattice lattice;
};

// Valuation-echelon form: pivots normalized to b^v, entries above a pivot
// reduced to degree < v.
Lattice echelon(const Lattice& l);
// Equality modulo the lower of the two orders, decided on the echelon form of
// l + b^N (B/b^N)^k, which is canonical.
bool same_lattice(const Lattice& x, const Lattice& y);

// Rank over K (number of Smith invariants below the order).
int lattice_rank(const Lattice& l);
// Length of (B/b^N)^k / l.
int lattice_index(const Lattice& l);
bool contains(const Lattice& l, const SeriesVector& v);
bool contains(const Lattice& l, const Lattice& sub);

// Smith basis b^{d_i} Winv_i of the lattice.
SeriesMatrix smith_basis(const SmithForm& s);
// Coordinates of v in the Smith basis; order drops to N - max d_i.
// Throws InvalidArgument if v is not in the lattice.
SeriesVector smith_coordinates(const SmithForm& s, const SeriesVector& v);

// Smallest normal lattice {x : b^n x in l} containing l; order drops by the
// largest Smith exponent.
Lattice normalize(const Lattice& l);
bool is_normal(const Lattice& l);

// Rows spanning the torsion-free left kernel {x : x m = 0}.
SeriesMatrix left_kernel_free(const SeriesMatrix& m);

Lattice sum(const Lattice& x, const Lattice& y);
Lattice scaled(const Lattice& l, int m);  // b^m l
Lattice image(const Lattice& l, const SeriesMatrix& map);
// {x : x * map in l}, torsion-free part.
Lattice preimage(const Lattice& l, const SeriesMatrix& map);

}  // namespace abm
