#include "k3mirror/lattice.hpp"

namespace k3mirror {

bool is_even(const IntMat& gram) {
    for (int i = 0; i < gram.rows(); ++i)
        if (gram.at(i, i) % 2 != 0) return false;
    return true;
}

LatticePtr make_lattice(IntMat gram, std::string label, bool allow_odd) {
    if (!gram.is_square()) throw Error("Gram matrix is not square");
    if (!gram.is_symmetric()) throw Error("Gram matrix is not symmetric");
    if (!allow_odd && !is_even(gram))
        throw OddFormError("odd form: a diagonal entry is odd (pass the odd override to allow)");
    auto l = std::make_shared<GramLattice>();
    l->gram = std::move(gram);
    l->label = std::move(label);
    return l;
}

bool same_lattice(const GramLattice& a, const GramLattice& b) {
    return a.gram == b.gram;
}

LatticePtr lattice_U() {
    IntMat g(2, 2);
    g.at(0, 1) = 1;
    g.at(1, 0) = 1;
    return make_lattice(std::move(g), "U");
}

LatticePtr lattice_E8_minus() {
    // Negated E8 Cartan matrix, nodes in Bourbaki order
    // (edges 1-3, 2-4, 3-4, 4-5, 5-6, 6-7, 7-8).
    static const int cartan[8][8] = {
        {2, 0, -1, 0, 0, 0, 0, 0},
        {0, 2, 0, -1, 0, 0, 0, 0},
        {-1, 0, 2, -1, 0, 0, 0, 0},
        {0, -1, -1, 2, -1, 0, 0, 0},
        {0, 0, 0, -1, 2, -1, 0, 0},
        {0, 0, 0, 0, -1, 2, -1, 0},
        {0, 0, 0, 0, 0, -1, 2, -1},
        {0, 0, 0, 0, 0, 0, -1, 2},
    };
    IntMat g(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) g.at(i, j) = -cartan[i][j];
    return make_lattice(std::move(g), "E8(-1)");
}

LatticePtr lattice_K3() {
    auto u = lattice_U();
    auto e8 = lattice_E8_minus();
    auto l = direct_sum(*direct_sum(*direct_sum(*u, *u), *u),
                        *direct_sum(*e8, *e8));
    return make_lattice(l->gram, "K3");
}

LatticePtr lattice_rank1(const Int& n, bool allow_odd) {
    IntMat g(1, 1);
    g.at(0, 0) = n;
    return make_lattice(std::move(g), "<" + n.get_str() + ">", allow_odd);
}

LatticePtr direct_sum(const GramLattice& a, const GramLattice& b) {
    IntMat g(a.rank() + b.rank(), a.rank() + b.rank());
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) g.at(i, j) = a.gram.at(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) g.at(a.rank() + i, a.rank() + j) = b.gram.at(i, j);
    std::string label = a.label.empty() || b.label.empty() ? std::string() : a.label + " + " + b.label;
    // direct sums of even lattices are even; still pass allow_odd for sums
    // built from explicitly allowed odd summands
    return make_lattice(std::move(g), std::move(label), true);
}

LatticeVector make_vector(IntVec coords, LatticePtr home) {
    if (!home) throw Error("vector without home lattice");
    if (static_cast<int>(coords.size()) != home->rank())
        throw Error("coordinate length does not match lattice rank");
    return LatticeVector{std::move(coords), std::move(home)};
}

IntVec pairing_row(const GramLattice& l, const IntVec& v) {
    return v * l.gram;
}

RatVec pairing_row(const GramLattice& l, const RatVec& v) {
    return v * l.gram;
}

Int inner_product(const GramLattice& l, const IntVec& u, const IntVec& v) {
    if (static_cast<int>(u.size()) != l.rank() || static_cast<int>(v.size()) != l.rank())
        throw Error("coordinate length does not match lattice rank");
    return dot(u * l.gram, v);
}

Rat inner_product(const GramLattice& l, const RatVec& u, const RatVec& v) {
    if (static_cast<int>(u.size()) != l.rank() || static_cast<int>(v.size()) != l.rank())
        throw Error("coordinate length does not match lattice rank");
    return dot(u * l.gram, v);
}

Int inner_product(const LatticeVector& u, const LatticeVector& v) {
    if (!u.home || !v.home || !same_lattice(*u.home, *v.home))
        throw Error("lattice mismatch");
    return inner_product(*u.home, u.coords, v.coords);
}

Signature signature(const GramLattice& l) {
    Signature s;
    for (const Rat& d : congruent_diagonalization(l.gram)) {
        int c = sgn(d);
        if (c > 0)
            ++s.positive;
        else if (c < 0)
            ++s.negative;
        else
            ++s.zero;
    }
    return s;
}

Int determinant(const GramLattice& l) {
    return determinant(l.gram);
}

std::vector<Int> discriminant_group(const GramLattice& l) {
    if (determinant(l.gram) == 0) throw Error("degenerate form");
    std::vector<Int> divs;
    for (const Int& d : smith_normal_form(l.gram).divisors)
        if (d > 1) divs.push_back(d);
    return divs;
}

} // namespace k3mirror
