#pragma once

// Sublattice machinery: embeddings with primitivity testing, saturation,
// orthogonal complements, quotients by isotropic vectors and the bounded
// search for 1-admissible vectors.

#include <optional>

#include "k3mirror/lattice.hpp"

namespace k3mirror {

struct Embedding {
    LatticePtr ambient;
    IntMat basis;   // rows = sublattice basis vectors in ambient coordinates
    LatticePtr sub; // induced Gram lattice
};

// Checks that the rows are linearly independent over Q and computes the
// induced Gram matrix basis * gram * basis^T.
Embedding make_embedding(LatticePtr ambient, IntMat basis, std::string label = "");

// True iff the cokernel of the basis matrix is torsion-free (all Smith
// divisors 1).
bool is_primitive(const Embedding& s);

// Primitive closure: (Q-span of s) intersected with the ambient lattice,
// with HNF-canonical basis.
Embedding saturate(const Embedding& s);

// { v in ambient : v.w == 0 for all w in s }, saturated by construction.
Embedding orthogonal_complement(const Embedding& s);

// gcd of the pairings of v with the basis of its home lattice; the positive
// generator of the ideal v.(home). Throws on the zero vector.
Int vector_divisor(const LatticeVector& v);

struct HyperbolicPair {
    LatticeVector e;
    LatticeVector e_prime;
};

// Checks e.e == 0, e'.e' == 0, e.e' == 1 and primitivity of both vectors.
HyperbolicPair make_hyperbolic_pair(LatticeVector e, LatticeVector e_prime);

// Deterministic bounded search for a 1-admissible vector in t together with
// a canonical isotropic partner. Vectors are enumerated in shells of
// increasing sup-norm h = 1..height; within a shell, coordinates run through
// the value order 0, 1, -1, 2, -2, ... with the first coordinate varying
// fastest. The first primitive isotropic vector whose pairing ideal is all
// of Z is returned with the partner E' = w - (w.w/2) E, where w solves
// E.w == 1 by an extended-gcd fold. Returns nullopt when the box contains no
// admissible vector; absence is a value, not an error.
std::optional<HyperbolicPair> find_admissible_pair(LatticePtr t, int height);

struct QuotientPresentation {
    Embedding source;       // E^perp inside t
    LatticeVector killed;   // the isotropic vector E
    IntMat section_basis;   // integral lifts of the quotient basis, rows in t coordinates
    LatticePtr quotient;    // induced even form on E^perp / ZE
};

// Requires E isotropic, primitive and nonzero. The induced form is
// recomputed against shifted lifts to confirm it does not depend on the
// choice of lift.
QuotientPresentation quotient_by_isotropic(LatticePtr t, const LatticeVector& e);

struct HyperbolicSplit {
    Embedding pair_embed; // span{E, E'} inside t, Gram U
    Embedding complement; // orthogonal complement of the pair inside t
};

// Splits t as U + complement along the pair; verifies rank additivity and
// that (E, E', complement basis) is a Z-basis of t.
HyperbolicSplit split_hyperbolic(LatticePtr t, const HyperbolicPair& p);

} // namespace k3mirror
