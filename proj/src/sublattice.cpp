#include "k3mirror/sublattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace k3mirror {

Embedding make_embedding(LatticePtr ambient, IntMat basis, std::string label) {
    if (!ambient) throw Error("embedding without ambient lattice");
    if (basis.cols() != ambient->rank())
        throw Error("basis width does not match ambient rank");
    if (hermite_normal_form(basis).rank != basis.rows())
        throw Error("basis rows are not linearly independent");
    IntMat induced = basis * ambient->gram * basis.transposed();
    Embedding s;
    s.sub = make_lattice(std::move(induced), std::move(label), true);
    s.ambient = std::move(ambient);
    s.basis = std::move(basis);
    return s;
}

bool is_primitive(const Embedding& s) {
    for (const Int& d : smith_normal_form(s.basis).divisors)
        if (d != 1) return false;
    return true;
}

Embedding saturate(const Embedding& s) {
    // The saturation is the set of integer vectors orthogonal (in the
    // standard coordinate pairing) to the column kernel of the basis.
    IntMat colkernel = integer_kernel(s.basis.transposed());
    IntMat sat = integer_kernel(colkernel.transposed());
    return make_embedding(s.ambient, std::move(sat), s.sub->label);
}

Embedding orthogonal_complement(const Embedding& s) {
    IntMat pairings = s.ambient->gram * s.basis.transposed();
    IntMat basis = integer_kernel(pairings);
    return make_embedding(s.ambient, std::move(basis));
}

Int vector_divisor(const LatticeVector& v) {
    Int g = gcd_of(pairing_row(*v.home, v.coords));
    if (g == 0) throw Error("divisor of the zero vector");
    return g;
}

HyperbolicPair make_hyperbolic_pair(LatticeVector e, LatticeVector e_prime) {
    if (!same_lattice(*e.home, *e_prime.home)) throw Error("lattice mismatch");
    if (inner_product(e, e) != 0) throw Error("vector not isotropic");
    if (inner_product(e_prime, e_prime) != 0) throw Error("partner not isotropic");
    if (inner_product(e, e_prime) != 1) throw Error("pair product is not 1");
    if (gcd_of(e.coords) != 1) throw Error("vector not primitive");
    if (gcd_of(e_prime.coords) != 1) throw Error("partner not primitive");
    return HyperbolicPair{std::move(e), std::move(e_prime)};
}

std::optional<HyperbolicPair> find_admissible_pair(LatticePtr t, int height) {
    if (height < 1) throw Error("search height must be >= 1");
    const int n = t->rank();
    std::vector<long> v(n);
    IntVec cand(n);
    for (int h = 1; h <= height; ++h) {
        SupNormShell shell(n, h);
        while (shell.next(v)) {
            long g = 0;
            for (int i = 0; i < n; ++i) g = std::gcd(g, std::abs(v[i]));
            if (g != 1) continue; // only primitive vectors
            for (int i = 0; i < n; ++i) cand[i] = v[i];
            IntVec pair_row = pairing_row(*t, cand);
            if (dot(pair_row, cand) != 0) continue; // not isotropic
            if (gcd_of(pair_row) != 1) continue;    // divisor > 1: no dual partner
            IntVec w = solve_dot_one(pair_row);
            // E' = w - (w.w/2) E; integrality uses evenness of t
            Int wnorm = inner_product(*t, w, w);
            if (wnorm % 2 != 0) throw Error("odd form: partner construction needs an even lattice");
            IntVec e_prime = w;
            Int half = wnorm / 2;
            for (int i = 0; i < n; ++i) e_prime[i] -= half * cand[i];
            return make_hyperbolic_pair(make_vector(cand, t), make_vector(std::move(e_prime), t));
        }
    }
    return std::nullopt;
}

QuotientPresentation quotient_by_isotropic(LatticePtr t, const LatticeVector& e) {
    if (!same_lattice(*t, *e.home)) throw Error("lattice mismatch");
    if (gcd_of(e.coords) != 1) throw Error("vector not primitive");
    if (inner_product(e, e) != 0) throw Error("vector not isotropic");

    const int n = t->rank();
    IntVec pr = pairing_row(*t, e.coords);
    IntMat col(n, 1);
    for (int i = 0; i < n; ++i) col.at(i, 0) = pr[i];
    IntMat w = integer_kernel(col); // basis of E^perp, saturated
    Embedding source = make_embedding(t, w);
    const int k = w.rows();

    // coordinates of e in the E^perp basis (integral because w is saturated)
    auto csol = solve_in_row_span(w, e.coords);
    if (!csol || !is_integral(*csol))
        throw InvariantViolation("isotropic vector does not lie in its own orthogonal complement");
    IntVec c = to_int(*csol);

    // unimodular T with T c^T = (1,0,...,0)^T; the rows of T^-T form a basis
    // of Z^k whose first row is c
    IntMat ccol(k, 1);
    for (int i = 0; i < k; ++i) ccol.at(i, 0) = c[i];
    HnfResult ch = hermite_normal_form(ccol);
    if (k > 0 && ch.hnf.at(0, 0) != 1)
        throw InvariantViolation("quotient vector is not primitive in the hyperplane");
    IntMat s = unimodular_inverse(ch.transform).transposed();

    std::vector<IntVec> lift_rows;
    for (int i = 1; i < k; ++i) lift_rows.push_back(s.row(i) * w);
    IntMat lifts = hermite_normal_form(IntMat::from_rows(lift_rows, n)).hnf;

    IntMat q = lifts * t->gram * lifts.transposed();

    // the induced form must not depend on the choice of lift
    IntMat shifted = lifts;
    for (int i = 0; i < shifted.rows(); ++i)
        for (int j = 0; j < n; ++j) shifted.at(i, j) += Int(i + 1) * e.coords[j];
    IntMat q2 = shifted * t->gram * shifted.transposed();
    if (q != q2) throw InvariantViolation("quotient form depends on the choice of lift");

    QuotientPresentation pres;
    pres.source = std::move(source);
    pres.killed = e;
    pres.section_basis = lifts;
    pres.quotient = make_lattice(std::move(q), t->label.empty() ? "" : t->label + "/E");
    return pres;
}

HyperbolicSplit split_hyperbolic(LatticePtr t, const HyperbolicPair& p) {
    if (!same_lattice(*t, *p.e.home)) throw Error("lattice mismatch");
    // revalidate the pair invariants on the way in
    make_hyperbolic_pair(p.e, p.e_prime);

    IntMat pair_basis = IntMat::from_rows({p.e.coords, p.e_prime.coords}, t->rank());
    Embedding pair_embed = make_embedding(t, pair_basis);
    Embedding complement = orthogonal_complement(pair_embed);

    if (complement.basis.rows() + 2 != t->rank())
        throw InvariantViolation("hyperbolic split does not fill the lattice rank");

    // (E, E', complement basis) must be a Z-basis of t
    std::vector<IntVec> all_rows{p.e.coords, p.e_prime.coords};
    for (int i = 0; i < complement.basis.rows(); ++i) all_rows.push_back(complement.basis.row(i));
    Int idx = determinant(IntMat::from_rows(all_rows, t->rank()));
    if (idx != 1 && idx != -1)
        throw InvariantViolation("hyperbolic pair does not split off over Z");

    return HyperbolicSplit{std::move(pair_embed), std::move(complement)};
}

} // namespace k3mirror
