#include "k3mirror/mirror.hpp"

#include <algorithm>

namespace k3mirror {

bool MirrorScenario::ambient_unimodular() const {
    Int d = determinant(ambient->gram);
    return d == 1 || d == -1;
}

namespace {

// Certify that the quotient presentation E^perp / ZE and the split
// complement of (E, E') describe the same form: every complement basis
// vector decomposes integrally over (E, section basis), and the resulting
// change of basis is unimodular and carries the quotient Gram to the
// complement Gram.
void verify_quotient_matches_complement(LatticePtr t, const LatticeVector& e,
                                        const Embedding& complement) {
    QuotientPresentation q = quotient_by_isotropic(t, e);
    const int k = complement.basis.rows();
    if (q.section_basis.rows() != k)
        throw InvariantViolation("quotient and split complement ranks differ");

    std::vector<IntVec> stacked_rows{e.coords};
    for (int i = 0; i < q.section_basis.rows(); ++i) stacked_rows.push_back(q.section_basis.row(i));
    IntMat stacked = IntMat::from_rows(stacked_rows, t->rank());

    IntMat b(k, k);
    for (int i = 0; i < k; ++i) {
        auto sol = solve_in_row_span(stacked, complement.basis.row(i));
        if (!sol || !is_integral(*sol))
            throw InvariantViolation("split complement does not decompose over the quotient section");
        for (int j = 0; j < k; ++j) b.at(i, j) = (*sol)[j + 1].get_num();
    }
    Int db = determinant(b);
    if (db != 1 && db != -1)
        throw InvariantViolation("quotient/split change of basis is not unimodular");
    if (b * q.quotient->gram * b.transposed() != complement.sub->gram)
        throw InvariantViolation("quotient form differs from the split complement form");
}

IntVec to_t_coordinates(const Embedding& t_emb, const IntVec& v, const char* what) {
    if (static_cast<int>(v.size()) == t_emb.sub->rank()) return v;
    if (static_cast<int>(v.size()) != t_emb.ambient->rank())
        throw Error(std::string(what) + ": coordinate length matches neither the ambient nor T");
    auto sol = solve_in_row_span(t_emb.basis, v);
    if (!sol || !is_integral(*sol)) throw Error(std::string(what) + ": vector does not lie in T");
    return to_int(*sol);
}

Embedding complement_of_rows(LatticePtr t, std::vector<IntVec> rows) {
    IntMat stacked = hermite_normal_form(IntMat::from_rows(rows, t->rank())).hnf;
    std::vector<IntVec> indep;
    for (int i = 0; i < stacked.rows(); ++i) {
        IntVec r = stacked.row(i);
        bool zero = std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
        if (!zero) indep.push_back(std::move(r));
    }
    return orthogonal_complement(make_embedding(t, IntMat::from_rows(indep, t->rank())));
}

} // namespace

MirrorScenario build_scenario(LatticePtr ambient, IntMat m_basis,
                              std::optional<std::pair<IntVec, IntVec>> p_vectors,
                              std::optional<std::pair<IntVec, IntVec>> p_prime_vectors,
                              int height) {
    MirrorScenario s;
    s.ambient = ambient;
    s.m_pol = make_embedding(ambient, std::move(m_basis), "M");
    if (!is_primitive(s.m_pol)) throw Error("polarization sublattice is not primitive");
    Signature msig = signature(*s.m_pol.sub);
    if (msig.positive != 1 || msig.zero != 0) throw Error("not a polarization lattice");

    s.t_lat = orthogonal_complement(s.m_pol);
    s.t_lat.sub = make_lattice(s.t_lat.sub->gram, "T");
    LatticePtr t = s.t_lat.sub;

    Signature lsig = signature(*ambient);
    Signature tsig = signature(*t);
    if (tsig.positive != lsig.positive - 1 || tsig.negative != lsig.negative - (msig.negative) ||
        tsig.zero != 0)
        throw InvariantViolation("transcendental lattice has the wrong signature");

    auto resolve_pair = [&](const std::optional<std::pair<IntVec, IntVec>>& given,
                            const char* name) -> std::optional<HyperbolicPair> {
        if (!given) return std::nullopt;
        IntVec e = to_t_coordinates(s.t_lat, given->first, name);
        IntVec ep = to_t_coordinates(s.t_lat, given->second, name);
        return make_hyperbolic_pair(make_vector(std::move(e), t), make_vector(std::move(ep), t));
    };

    if (auto p = resolve_pair(p_vectors, "P")) {
        s.p_slag = *p;
    } else {
        auto found = find_admissible_pair(t, height);
        if (!found)
            throw NoAdmissiblePairError("no admissible vector in T within height " +
                                        std::to_string(height));
        s.p_slag = *found;
    }

    HyperbolicSplit p_split = split_hyperbolic(t, s.p_slag);

    if (auto pp = resolve_pair(p_prime_vectors, "Pprime")) {
        s.p_prime = *pp;
    } else {
        auto found = find_admissible_pair(p_split.complement.sub, height);
        if (!found)
            throw NoAdmissiblePairError("no admissible vector in the complement of P within height " +
                                        std::to_string(height));
        IntVec e = found->e.coords * p_split.complement.basis;
        IntVec ep = found->e_prime.coords * p_split.complement.basis;
        s.p_prime = make_hyperbolic_pair(make_vector(std::move(e), t), make_vector(std::move(ep), t));
    }

    s.pairs_orthogonal =
        inner_product(s.p_slag.e, s.p_prime.e) == 0 &&
        inner_product(s.p_slag.e, s.p_prime.e_prime) == 0 &&
        inner_product(s.p_slag.e_prime, s.p_prime.e) == 0 &&
        inner_product(s.p_slag.e_prime, s.p_prime.e_prime) == 0;

    s.mcheck_in_t = p_split.complement;
    s.mcheck_in_t.sub = make_lattice(s.mcheck_in_t.sub->gram, "Mcheck");
    s.m_check = s.mcheck_in_t.sub;

    HyperbolicSplit pp_split = split_hyperbolic(t, s.p_prime);
    s.mprime_in_t = pp_split.complement;
    s.mprime_in_t.sub = make_lattice(s.mprime_in_t.sub->gram, "Mprime");
    s.m_prime = s.mprime_in_t.sub;

    s.r_core = complement_of_rows(t, {s.p_slag.e.coords, s.p_slag.e_prime.coords,
                                      s.p_prime.e.coords, s.p_prime.e_prime.coords});

    if (s.pairs_orthogonal) {
        // P^perp equals P' + R and P'^perp equals P + R as sublattices of T
        auto stack_hnf = [&](const HyperbolicPair& pair) {
            std::vector<IntVec> rows{pair.e.coords, pair.e_prime.coords};
            for (int i = 0; i < s.r_core.basis.rows(); ++i) rows.push_back(s.r_core.basis.row(i));
            return hermite_normal_form(IntMat::from_rows(rows, t->rank())).hnf;
        };
        if (stack_hnf(s.p_prime) != s.mcheck_in_t.basis)
            throw InvariantViolation("Mcheck realization does not match P' + R");
        if (stack_hnf(s.p_slag) != s.mprime_in_t.basis)
            throw InvariantViolation("Mprime realization does not match P + R");

        auto ref = solve_in_row_span(s.mprime_in_t.basis,
                                     add(s.p_slag.e.coords, s.p_slag.e_prime.coords));
        if (!ref) throw InvariantViolation("cone reference does not lie in Mprime");
        s.cone_ref = *ref;
    }

    verify_quotient_matches_complement(t, s.p_slag.e, s.mcheck_in_t);

    // index bookkeeping |det M| |det T| = |det L| [L : M + T]^2
    std::vector<IntVec> mt_rows;
    for (int i = 0; i < s.m_pol.basis.rows(); ++i) mt_rows.push_back(s.m_pol.basis.row(i));
    for (int i = 0; i < s.t_lat.basis.rows(); ++i) mt_rows.push_back(s.t_lat.basis.row(i));
    Int idx = determinant(IntMat::from_rows(mt_rows, ambient->rank()));
    Int lhs = abs(determinant(s.m_pol.sub->gram) * determinant(t->gram));
    Int rhs = abs(determinant(ambient->gram)) * idx * idx;
    if (lhs != rhs) throw InvariantViolation("determinant/index bookkeeping failed");

    if (s.k3_sized() && s.ambient_unimodular() &&
        s.m_pol.sub->rank() + s.m_check->rank() != 20)
        throw InvariantViolation("rank(M) + rank(Mcheck) != 20 over the K3 lattice");

    s.mcheck_in_ambient = s.mcheck_in_t.basis * s.t_lat.basis;
    return s;
}

void override_mcheck(MirrorScenario& s, IntMat basis_in_ambient) {
    Embedding e = make_embedding(s.ambient, basis_in_ambient, "Mcheck");
    s.m_check = e.sub;
    s.mcheck_in_ambient = std::move(basis_in_ambient);
}

LatticePtr mirror_lattice(const Embedding& m_pol, const HyperbolicPair& pair) {
    if (!is_primitive(m_pol)) throw Error("polarization sublattice is not primitive");
    Embedding t_emb = orthogonal_complement(m_pol);
    if (!same_lattice(*pair.e.home, *t_emb.sub))
        throw Error("pair does not live in the orthogonal complement of M");
    LatticePtr t = pair.e.home;
    HyperbolicSplit split = split_hyperbolic(t, pair);
    verify_quotient_matches_complement(t, pair.e, split.complement);
    return make_lattice(split.complement.sub->gram, "Mcheck");
}

int moduli_dimension(const GramLattice& m) {
    Signature s = signature(m);
    if (s.positive != 1 || s.zero != 0) throw Error("not a polarization lattice");
    return 20 - m.rank();
}

ConditionsReport check_conditions(const MirrorScenario& s, int height) {
    ConditionsReport rep;

    auto pair = find_admissible_pair(s.m_check, height);
    rep.mcheck_pair = pair;
    rep.cond_i.pass = pair.has_value();
    if (pair) {
        std::string w = "[";
        for (size_t i = 0; i < pair->e.coords.size(); ++i)
            w += (i ? "," : "") + pair->e.coords[i].get_str();
        rep.cond_i.detail = "hyperbolic pair with E = " + w + "]";
    } else {
        rep.cond_i.detail = "no admissible vector within height " + std::to_string(height);
    }

    rep.cond_ii.pass = rep.cond_i.pass;
    rep.cond_ii.detail = "lattice-level criterion: equivalent to (i)";

    const auto& p = s.p_slag;
    const auto& pp = s.p_prime;
    struct Named {
        const char* name;
        Int value;
    };
    Named pairings[] = {
        {"P.e x P'.e", inner_product(p.e, pp.e)},
        {"P.e x P'.e'", inner_product(p.e, pp.e_prime)},
        {"P.e' x P'.e", inner_product(p.e_prime, pp.e)},
        {"P.e' x P'.e'", inner_product(p.e_prime, pp.e_prime)},
    };
    std::string bad;
    for (const auto& n : pairings)
        if (n.value != 0) bad += std::string(bad.empty() ? "" : ", ") + n.name + " = " + n.value.get_str();
    if (!bad.empty()) {
        rep.cond_iii.pass = false;
        rep.cond_iii.detail = "nonzero cross pairings: " + bad;
        return rep;
    }
    std::vector<IntVec> rows{p.e.coords, p.e_prime.coords, pp.e.coords, pp.e_prime.coords};
    for (int i = 0; i < s.r_core.basis.rows(); ++i) rows.push_back(s.r_core.basis.row(i));
    Int d = determinant(IntMat::from_rows(rows, s.t_lat.sub->rank()));
    if (d == 1 || d == -1) {
        rep.cond_iii.pass = true;
        rep.cond_iii.detail = "P + P' is an orthogonal summand of T";
    } else {
        rep.cond_iii.pass = false;
        rep.cond_iii.detail = "P + P' + R has index " + abs(d).get_str() + " in T";
    }
    return rep;
}

IsometryReport::Invariants lattice_invariants(const GramLattice& l) {
    IsometryReport::Invariants inv;
    inv.rank = l.rank();
    inv.sig = signature(l);
    inv.even = is_even(l.gram);
    for (const Int& d : smith_normal_form(l.gram).divisors)
        if (d != 1) inv.divisors.push_back(d);
    return inv;
}

namespace {

class IsometrySearch {
public:
    IsometrySearch(const IntMat& g_from, const IntMat& g_to, int height, long budget)
        : g_from_(g_from), g_to_(g_to), n_(g_from.rows()), height_(height), budget_(budget) {}

    std::optional<IntMat> run() {
        rows_.clear();
        if (dfs(0)) return IntMat::from_rows(rows_, n_);
        return std::nullopt;
    }

private:
    bool dfs(int k) {
        if (k == n_) {
            Int d = determinant(IntMat::from_rows(rows_, n_));
            return d == 1 || d == -1;
        }
        std::vector<long> v(n_);
        IntVec cand(n_);
        for (int h = 1; h <= height_; ++h) {
            SupNormShell shell(n_, h);
            while (shell.next(v)) {
                if (--budget_ < 0) return false;
                for (int i = 0; i < n_; ++i) cand[i] = v[i];
                IntVec pr = cand * g_to_;
                if (dot(pr, cand) != g_from_.at(k, k)) continue;
                bool ok = true;
                for (int j = 0; j < k && ok; ++j)
                    if (dot(pr, rows_[j]) != g_from_.at(k, j)) ok = false;
                if (!ok) continue;
                rows_.push_back(cand);
                if (dfs(k + 1)) return true;
                rows_.pop_back();
                if (budget_ < 0) return false;
            }
        }
        return false;
    }

    const IntMat& g_from_;
    const IntMat& g_to_;
    int n_;
    int height_;
    long budget_;
    std::vector<IntVec> rows_;
};

} // namespace

std::optional<IntMat> find_isometry(const IntMat& g_from, const IntMat& g_to, int height,
                                    long node_budget) {
    if (g_from.rows() != g_to.rows()) return std::nullopt;
    if (g_from.rows() == 0) return IntMat(0, 0);
    return IsometrySearch(g_from, g_to, height, node_budget).run();
}

IsometryReport duality_check(const MirrorScenario& s, int height, int iso_height) {
    IsometryReport rep;
    Embedding mcheck_emb = make_embedding(s.ambient, s.mcheck_in_ambient, "Mcheck");
    rep.mcheck_realization_primitive = is_primitive(mcheck_emb);

    Embedding tdd = orthogonal_complement(mcheck_emb);
    auto pair = find_admissible_pair(tdd.sub, height);
    if (!pair) throw NoAdmissiblePairError("cannot form double mirror");
    HyperbolicSplit split = split_hyperbolic(tdd.sub, *pair);
    rep.mdd_lattice = make_lattice(split.complement.sub->gram, "Mdoublecheck");

    rep.m = lattice_invariants(*s.m_pol.sub);
    rep.mcheck = lattice_invariants(*s.m_check);
    rep.mdd = lattice_invariants(*rep.mdd_lattice);

    bool distinct = !(rep.mdd == rep.m);
    if (s.ambient_unimodular()) {
        // duality forces the discriminant of the mirror to match that of M
        if (rep.mcheck.divisors != rep.m.divisors) distinct = true;
        if (rep.mcheck.rank != s.ambient->rank() - rep.m.rank - 2) distinct = true;
    }
    if (distinct) {
        rep.verdict = IsometryReport::Verdict::Distinct;
        return rep;
    }

    if (rep.m.rank <= 8) {
        auto cert = find_isometry(rep.mdd_lattice->gram, s.m_pol.sub->gram, iso_height);
        if (cert) {
            if (*cert * s.m_pol.sub->gram * cert->transposed() != rep.mdd_lattice->gram)
                throw InvariantViolation("isometry certificate fails to match the Gram matrices");
            rep.certificate = std::move(cert);
            rep.verdict = IsometryReport::Verdict::IsometricCertified;
            return rep;
        }
    }
    rep.verdict = IsometryReport::Verdict::InvariantEquivalent;
    return rep;
}

} // namespace k3mirror
