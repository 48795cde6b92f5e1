#pragma once

// The mirror-lattice construction: the triple decomposition of the ambient
// lattice, the three lattice-level fibration conditions, moduli dimension
// bookkeeping and the double-mirror duality check.

#include <optional>

#include "k3mirror/sublattice.hpp"

namespace k3mirror {

constexpr int kDefaultHeight = 10;

struct MirrorScenario {
    LatticePtr ambient;     // L
    Embedding m_pol;        // M inside L, primitive, signature (1,t)
    Embedding t_lat;        // T = M^perp inside L
    HyperbolicPair p_slag;  // P, the fibration pair, in T coordinates
    HyperbolicPair p_prime; // P', the pair the mirror map is written against
    bool pairs_orthogonal = false;
    Embedding r_core;       // orthogonal complement of P + P' inside T
    Embedding mcheck_in_t;  // realization of Mcheck = P^perp inside T
    Embedding mprime_in_t;  // realization of Mprime = P'^perp inside T
    LatticePtr m_check;     // Gram of Mcheck (may be overridden by a document)
    LatticePtr m_prime;     // Gram of Mprime
    IntMat mcheck_in_ambient; // Mcheck realization rows in L coordinates
    RatVec cone_ref;        // positive-cone reference in Mprime coordinates

    bool ambient_unimodular() const;
    bool k3_sized() const { return ambient->rank() == 22; }
};

// Assembles and validates a scenario. P and P' vectors, when given, are in
// ambient or T coordinates (distinguished by length); when absent they are
// found by the deterministic bounded search (P in T, then P' in the
// complement of P). Throws Error("no admissible vector within height") when
// a search comes up empty. Non-orthogonal explicit pairs are accepted and
// recorded so condition (iii) can be reported as failing.
MirrorScenario build_scenario(LatticePtr ambient, IntMat m_basis,
                              std::optional<std::pair<IntVec, IntVec>> p_vectors,
                              std::optional<std::pair<IntVec, IntVec>> p_prime_vectors,
                              int height = kDefaultHeight);

// Replace the stored Mcheck realization (corrupt-scenario support for the
// duality report; rows in ambient coordinates).
void override_mcheck(MirrorScenario& s, IntMat basis_in_ambient);

// Mcheck as the split complement of the pair inside T = M^perp,
// cross-checked against the quotient presentation by the canonical
// change of basis.
LatticePtr mirror_lattice(const Embedding& m_pol, const HyperbolicPair& pair);

// 20 - rank(m) for a signature (1,t) lattice; throws otherwise.
int moduli_dimension(const GramLattice& m);

struct ConditionWitness {
    bool pass = false;
    std::string detail;
};

struct ConditionsReport {
    ConditionWitness cond_i;   // Mcheck contains a hyperbolic pair
    ConditionWitness cond_ii;  // lattice-level restatement of (i)
    ConditionWitness cond_iii; // P and P' orthogonal, P + P' split off T
    std::optional<HyperbolicPair> mcheck_pair;
    bool all() const { return cond_i.pass && cond_ii.pass && cond_iii.pass; }
};

ConditionsReport check_conditions(const MirrorScenario& s, int height = kDefaultHeight);

struct IsometryReport {
    enum class Verdict { IsometricCertified, InvariantEquivalent, Distinct };

    Verdict verdict = Verdict::Distinct;
    // rows X with X * gram(M) * X^T == gram(Mdd)
    std::optional<IntMat> certificate;

    struct Invariants {
        int rank = 0;
        Signature sig;
        bool even = false;
        std::vector<Int> divisors;
        bool operator==(const Invariants&) const = default;
    };
    Invariants m, mcheck, mdd;
    LatticePtr mdd_lattice;
    bool mcheck_realization_primitive = false;
};

IsometryReport::Invariants lattice_invariants(const GramLattice& l);

// Builds the double mirror from the stored Mcheck realization (pair found in
// Mcheck^perp within the ambient lattice, split complement taken) and
// compares it with M: first by invariants, also requiring the stored Mcheck
// to have the discriminant forced by duality, then by a bounded backtracking
// isometry search (attempted up to rank 8).
IsometryReport duality_check(const MirrorScenario& s, int height = kDefaultHeight,
                             int iso_height = 4);

// Backtracking search for X with X * g_to * X^T == g_from, |det X| = 1,
// entries bounded by height. node_budget caps the number of candidate rows
// examined; exhaustion returns nullopt.
std::optional<IntMat> find_isometry(const IntMat& g_from, const IntMat& g_to, int height,
                                    long node_budget = 5000000);

} // namespace k3mirror
