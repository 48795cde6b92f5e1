#pragma once

// Lattices over Z with even symmetric bilinear forms, presented by Gram
// matrices in a fixed basis.

#include <memory>
#include <string>
#include <vector>

#include "k3mirror/exact.hpp"

namespace k3mirror {

struct GramLattice {
    IntMat gram; // symmetric
    std::string label;

    int rank() const { return gram.rows(); }
};

using LatticePtr = std::shared_ptr<const GramLattice>;

// Rejects non-symmetric Gram matrices and, unless allow_odd is set, odd
// diagonal entries (every lattice in the mirror construction is even).
LatticePtr make_lattice(IntMat gram, std::string label, bool allow_odd = false);

bool is_even(const IntMat& gram);
bool same_lattice(const GramLattice& a, const GramLattice& b);

// The hyperbolic plane U: Gram [[0,1],[1,0]].
LatticePtr lattice_U();
// E8 with the negative definite sign convention: the negated E8 Cartan
// matrix, even, determinant 1, signature (0,8).
LatticePtr lattice_E8_minus();
// The K3 lattice U + U + U + E8(-1) + E8(-1), rank 22, signature (3,19).
// Basis order: U1, U2, U3, first E8, second E8.
LatticePtr lattice_K3();
// Rank-1 lattice <n>.
LatticePtr lattice_rank1(const Int& n, bool allow_odd = false);

LatticePtr direct_sum(const GramLattice& a, const GramLattice& b);

struct LatticeVector {
    IntVec coords;
    LatticePtr home;
};

LatticeVector make_vector(IntVec coords, LatticePtr home);

// Pairing row v * gram: entry j is the product of v with the j-th basis
// vector.
IntVec pairing_row(const GramLattice& l, const IntVec& v);
RatVec pairing_row(const GramLattice& l, const RatVec& v);

Int inner_product(const GramLattice& l, const IntVec& u, const IntVec& v);
Rat inner_product(const GramLattice& l, const RatVec& u, const RatVec& v);
// Throws "lattice mismatch" if u and v do not live in the same lattice.
Int inner_product(const LatticeVector& u, const LatticeVector& v);

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    bool operator==(const Signature&) const = default;
};

Signature signature(const GramLattice& l);
Int determinant(const GramLattice& l);

// Nontrivial elementary divisors (> 1) of the Gram matrix; the discriminant
// group is the product of the corresponding cyclic groups. Throws
// "degenerate form" on determinant 0.
std::vector<Int> discriminant_group(const GramLattice& l);

} // namespace k3mirror
