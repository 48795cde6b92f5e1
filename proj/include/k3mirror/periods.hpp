#pragma once

// Period points, complexified Kahler classes, the explicit mirror map and
// its inverse, B-field residues, hyperkahler rotation, Picard lattices and
// the full mirror pipeline.

#include "k3mirror/mirror.hpp"

namespace k3mirror {

// Omega = x + iy with x.x == y.y, x.y == 0 and x.x > 0, exact rational
// coordinates in the home lattice basis.
struct PeriodPoint {
    RatVec x, y;
    LatticePtr home;
};

PeriodPoint make_period(RatVec x, RatVec y, LatticePtr home);

// B + i omega with omega.omega > 0, omega on the cone_ref side of the
// positive cone. Coordinates are in the home basis; home is Mprime for the
// canonical frame and T for classes given directly in transcendental
// coordinates.
struct ComplexifiedKahlerClass {
    RatVec b, w, cone_ref;
    LatticePtr home;
};

ComplexifiedKahlerClass make_kahler_class(RatVec b, RatVec w, RatVec cone_ref, LatticePtr home);

struct BFieldResidue {
    RatVec residues; // entries in [0,1)
    bool integral() const;
};

// phi(B + i w) = B + E' + (w.w - B.B)/2 E + i (w - (w.B) E) in T
// coordinates. Classes in Mprime coordinates are mapped through the
// realization first; classes already in T coordinates must pair to zero
// with E and E'.
PeriodPoint mirror_map(const ComplexifiedKahlerClass& k, const HyperbolicPair& pair,
                       const Embedding& m_prime_in_t);

// Inverse of the mirror map on periods normalized to x.E == 1, y.E == 0:
// B = x - E' - (x.E') E, w = y - (y.E') E, both returned in Mprime
// coordinates. cone_ref defaults to w itself.
ComplexifiedKahlerClass invert_mirror_map(const PeriodPoint& p, const HyperbolicPair& pair,
                                          const Embedding& m_prime_in_t,
                                          std::optional<RatVec> cone_ref = std::nullopt);

// Rescales Omega by the exact complex rational 1/(Omega.E) so that
// x.E == 1 and y.E == 0. The projective class is unchanged.
PeriodPoint normalize_period(const PeriodPoint& p, const HyperbolicPair& pair);

// Fractional parts of the B coordinates in the home basis.
BFieldResidue b_field_residue(const ComplexifiedKahlerClass& k);

ComplexifiedKahlerClass zero_b_field(const ComplexifiedKahlerClass& k);

// Three pairwise orthogonal classes of equal positive norm.
struct HyperkahlerTriple {
    RatVec kahler, re_holo, im_holo;
    LatticePtr home;
};

HyperkahlerTriple make_triple(RatVec kahler, RatVec re_holo, RatVec im_holo, LatticePtr home);

// (omega, x, y) -> (x, -omega, y); order 4.
HyperkahlerTriple hyperkahler_rotate(const HyperkahlerTriple& t);

// Primitive sublattice of integer vectors orthogonal to both x and y.
Embedding picard_lattice(LatticePtr ambient, const PeriodPoint& p);

struct MuReport {
    PeriodPoint normalized;             // input period after normalization (T coords)
    RatVec b_field;                     // extracted B in Mprime coordinates
    RatVec b_field_in_t;                // the same class in T coordinates
    BFieldResidue residue;
    RatVec omega_check;                 // extracted Kahler direction, T coordinates
    bool omega_in_p = false;            // whether omega lies in P tensor Q
    bool cone_flipped = false;          // scenario cone reference pointed away
    PeriodPoint zero_b_period;          // phi(i omega), T coordinates
    HyperkahlerTriple triple;           // (kahler, Re phi(i omega), Im phi(i omega)) in L
    HyperkahlerTriple rotated;          // after the quarter rotation
    PeriodPoint new_period;             // kahler + i Im phi(i omega) in L coordinates
    Embedding picard;                   // Picard lattice of the new period
    std::vector<bool> mcheck_membership;
    bool contains_mcheck = false;
};

// Normalize against P', invert the mirror map, report the B-field residue,
// set B to zero, rebuild the period, rotate the hyperkahler triple with the
// supplied Kahler class (ambient coordinates, must lie in M tensor Q and
// match the norm of omega exactly) and compute the Picard lattice of the
// rotated period together with the Mcheck containment verdict.
MuReport mu_pipeline(const MirrorScenario& s, const PeriodPoint& p, const RatVec& kahler_ambient);

} // namespace k3mirror
