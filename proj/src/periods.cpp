#include "k3mirror/periods.hpp"

namespace k3mirror {

namespace {

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat frac_part(const Rat& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return q - Rat(fl);
}

} // namespace

PeriodPoint make_period(RatVec x, RatVec y, LatticePtr home) {
    if (!home) throw Error("period without home lattice");
    if (static_cast<int>(x.size()) != home->rank() || static_cast<int>(y.size()) != home->rank())
        throw Error("period coordinate length does not match lattice rank");
    Rat xx = inner_product(*home, x, x);
    Rat yy = inner_product(*home, y, y);
    Rat xy = inner_product(*home, x, y);
    if (xy != 0)
        throw InvariantViolation("invariant violated: x.y = " + rat_str(xy) + " (expected 0)");
    if (xx != yy)
        throw InvariantViolation("invariant violated: x.x = " + rat_str(xx) + " differs from y.y = " +
                                 rat_str(yy));
    if (xx <= 0)
        throw InvariantViolation("invariant violated: x.x = " + rat_str(xx) + " (expected > 0)");
    return PeriodPoint{std::move(x), std::move(y), std::move(home)};
}

ComplexifiedKahlerClass make_kahler_class(RatVec b, RatVec w, RatVec cone_ref, LatticePtr home) {
    if (!home) throw Error("Kahler class without home lattice");
    const int n = home->rank();
    if (static_cast<int>(b.size()) != n || static_cast<int>(w.size()) != n)
        throw Error("Kahler class coordinate length does not match lattice rank");
    if (cone_ref.empty()) cone_ref = w;
    if (static_cast<int>(cone_ref.size()) != n)
        throw Error("cone reference length does not match lattice rank");
    Rat ww = inner_product(*home, w, w);
    if (ww <= 0)
        throw InvariantViolation("invariant violated: omega.omega = " + rat_str(ww) +
                                 " (expected > 0)");
    Rat side = inner_product(*home, w, cone_ref);
    if (side <= 0)
        throw InvariantViolation("invariant violated: omega.cone_ref = " + rat_str(side) +
                                 " (expected > 0)");
    return ComplexifiedKahlerClass{std::move(b), std::move(w), std::move(cone_ref), std::move(home)};
}

bool BFieldResidue::integral() const {
    for (const Rat& r : residues)
        if (r != 0) return false;
    return true;
}

BFieldResidue b_field_residue(const ComplexifiedKahlerClass& k) {
    BFieldResidue res;
    res.residues.reserve(k.b.size());
    for (const Rat& q : k.b) res.residues.push_back(frac_part(q));
    return res;
}

ComplexifiedKahlerClass zero_b_field(const ComplexifiedKahlerClass& k) {
    ComplexifiedKahlerClass out = k;
    out.b.assign(out.b.size(), Rat(0));
    return out;
}

namespace {

struct Frame {
    RatVec b_t, w_t; // class in T coordinates
};

Frame to_t_frame(const ComplexifiedKahlerClass& k, const HyperbolicPair& pair,
                 const Embedding& m_prime_in_t) {
    LatticePtr t = pair.e.home;
    Frame f;
    if (same_lattice(*k.home, *t)) {
        f.b_t = k.b;
        f.w_t = k.w;
    } else if (same_lattice(*k.home, *m_prime_in_t.sub)) {
        f.b_t = k.b * m_prime_in_t.basis;
        f.w_t = k.w * m_prime_in_t.basis;
    } else {
        throw Error("class not in M': home lattice is neither Mprime nor T");
    }
    RatVec e = to_rat(pair.e.coords);
    RatVec ep = to_rat(pair.e_prime.coords);
    for (const RatVec* v : {&f.b_t, &f.w_t}) {
        if (inner_product(*t, *v, e) != 0 || inner_product(*t, *v, ep) != 0)
            throw Error("class not in M'");
    }
    return f;
}

} // namespace

PeriodPoint mirror_map(const ComplexifiedKahlerClass& k, const HyperbolicPair& pair,
                       const Embedding& m_prime_in_t) {
    LatticePtr t = pair.e.home;
    Frame f = to_t_frame(k, pair, m_prime_in_t);
    RatVec e = to_rat(pair.e.coords);
    RatVec ep = to_rat(pair.e_prime.coords);

    Rat wn = inner_product(*t, f.w_t, f.w_t);
    Rat bn = inner_product(*t, f.b_t, f.b_t);
    Rat wb = inner_product(*t, f.w_t, f.b_t);
    Rat half = Rat(1, 2) * (wn - bn);

    RatVec x = rat_add(rat_add(f.b_t, ep), rat_scaled(e, half));
    RatVec y = rat_sub(f.w_t, rat_scaled(e, wb));

    // the defining identities of the map, rechecked on every call
    Rat xy = inner_product(*t, x, y);
    Rat xx = inner_product(*t, x, x);
    Rat yy = inner_product(*t, y, y);
    if (xy != 0 || xx != wn || yy != wn)
        throw InvariantViolation("mirror map identities failed on exact data");
    return make_period(std::move(x), std::move(y), t);
}

PeriodPoint normalize_period(const PeriodPoint& p, const HyperbolicPair& pair) {
    LatticePtr t = pair.e.home;
    if (!same_lattice(*p.home, *t)) throw Error("lattice mismatch");
    RatVec e = to_rat(pair.e.coords);
    Rat a = inner_product(*t, p.x, e);
    Rat b = inner_product(*t, p.y, e);
    if (a == 0 && b == 0)
        throw Error("period orthogonal to E; choose another admissible vector");
    // Omega' = Omega / (a + ib)
    Rat nrm = a * a + b * b;
    Rat s = a / nrm;
    Rat u = -b / nrm;
    RatVec x = rat_sub(rat_scaled(p.x, s), rat_scaled(p.y, u));
    RatVec y = rat_add(rat_scaled(p.y, s), rat_scaled(p.x, u));
    PeriodPoint out = make_period(std::move(x), std::move(y), p.home);
    if (inner_product(*t, out.x, e) != 1 || inner_product(*t, out.y, e) != 0)
        throw InvariantViolation("normalization failed to reach x.E = 1, y.E = 0");
    return out;
}

ComplexifiedKahlerClass invert_mirror_map(const PeriodPoint& p, const HyperbolicPair& pair,
                                          const Embedding& m_prime_in_t,
                                          std::optional<RatVec> cone_ref) {
    LatticePtr t = pair.e.home;
    if (!same_lattice(*p.home, *t)) throw Error("lattice mismatch");
    RatVec e = to_rat(pair.e.coords);
    RatVec ep = to_rat(pair.e_prime.coords);
    if (inner_product(*t, p.x, e) != 1 || inner_product(*t, p.y, e) != 0)
        throw Error("normalize first");

    Rat beta = inner_product(*t, p.x, ep);
    Rat gamma = inner_product(*t, p.y, ep);
    RatVec b_t = rat_sub(rat_sub(p.x, ep), rat_scaled(e, beta));
    RatVec w_t = rat_sub(p.y, rat_scaled(e, gamma));

    for (const RatVec* v : {&b_t, &w_t}) {
        if (inner_product(*t, *v, e) != 0 || inner_product(*t, *v, ep) != 0)
            throw InvariantViolation("extracted class is not orthogonal to the pair");
    }

    auto bm = solve_in_row_span(m_prime_in_t.basis, b_t);
    auto wm = solve_in_row_span(m_prime_in_t.basis, w_t);
    if (!bm || !wm) throw InvariantViolation("extracted class does not lie in M' over Q");
    RatVec ref = cone_ref.value_or(*wm);
    return make_kahler_class(std::move(*bm), std::move(*wm), std::move(ref), m_prime_in_t.sub);
}

HyperkahlerTriple make_triple(RatVec kahler, RatVec re_holo, RatVec im_holo, LatticePtr home) {
    if (!home) throw Error("triple without home lattice");
    const GramLattice& l = *home;
    struct Named {
        const char* name;
        const RatVec *u, *v;
    };
    Named pairs[] = {
        {"kahler.re_holo", &kahler, &re_holo},
        {"kahler.im_holo", &kahler, &im_holo},
        {"re_holo.im_holo", &re_holo, &im_holo},
    };
    for (const auto& pr : pairs) {
        Rat q = inner_product(l, *pr.u, *pr.v);
        if (q != 0)
            throw InvariantViolation("invariant violated: " + std::string(pr.name) + " = " +
                                     rat_str(q) + " (expected 0)");
    }
    Rat a = inner_product(l, kahler, kahler);
    Rat b = inner_product(l, re_holo, re_holo);
    Rat c = inner_product(l, im_holo, im_holo);
    if (a != b || b != c)
        throw InvariantViolation("invariant violated: norms differ: kahler^2 = " + rat_str(a) +
                                 ", re^2 = " + rat_str(b) + ", im^2 = " + rat_str(c));
    if (a <= 0)
        throw InvariantViolation("invariant violated: kahler^2 = " + rat_str(a) + " (expected > 0)");
    return HyperkahlerTriple{std::move(kahler), std::move(re_holo), std::move(im_holo),
                             std::move(home)};
}

HyperkahlerTriple hyperkahler_rotate(const HyperkahlerTriple& t) {
    RatVec neg = rat_scaled(t.kahler, Rat(-1));
    return make_triple(t.re_holo, std::move(neg), t.im_holo, t.home);
}

Embedding picard_lattice(LatticePtr ambient, const PeriodPoint& p) {
    if (!same_lattice(*p.home, *ambient)) throw Error("lattice mismatch");
    const int n = ambient->rank();
    auto cleared = [&](const RatVec& v) {
        Int l = 1;
        for (const Rat& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        IntVec r(n);
        for (int i = 0; i < n; ++i) r[i] = v[i].get_num() * (l / v[i].get_den());
        return r;
    };
    IntVec px = pairing_row(*ambient, cleared(p.x));
    IntVec py = pairing_row(*ambient, cleared(p.y));
    IntMat constraints(n, 2);
    for (int i = 0; i < n; ++i) {
        constraints.at(i, 0) = px[i];
        constraints.at(i, 1) = py[i];
    }
    return make_embedding(ambient, integer_kernel(constraints), "Pic");
}

MuReport mu_pipeline(const MirrorScenario& s, const PeriodPoint& p, const RatVec& kahler_ambient) {
    if (!same_lattice(*p.home, *s.t_lat.sub))
        throw Error("period is not in T coordinates");
    LatticePtr t = s.t_lat.sub;
    MuReport rep;

    rep.normalized = normalize_period(p, s.p_prime);

    // extract (B, omega); the scenario cone reference fixes the component
    // when it agrees with the extracted direction
    ComplexifiedKahlerClass free_ref =
        invert_mirror_map(rep.normalized, s.p_prime, s.mprime_in_t);
    if (!s.cone_ref.empty()) {
        Rat side = inner_product(*s.m_prime, free_ref.w, s.cone_ref);
        if (side > 0) {
            free_ref = make_kahler_class(free_ref.b, free_ref.w, s.cone_ref, free_ref.home);
        } else {
            rep.cone_flipped = true;
        }
    }
    rep.b_field = free_ref.b;
    rep.b_field_in_t = free_ref.b * s.mprime_in_t.basis;
    rep.residue = b_field_residue(free_ref);
    rep.omega_check = free_ref.w * s.mprime_in_t.basis;

    IntMat p_rows = IntMat::from_rows({s.p_slag.e.coords, s.p_slag.e_prime.coords}, t->rank());
    rep.omega_in_p = solve_in_row_span(p_rows, rep.omega_check).has_value();

    // set B = 0 and rebuild the period
    ComplexifiedKahlerClass zeroed = zero_b_field(free_ref);
    rep.zero_b_period = mirror_map(zeroed, s.p_prime, s.mprime_in_t);

    // the Kahler class must lie in M tensor Q and match the omega norm
    if (static_cast<int>(kahler_ambient.size()) != s.ambient->rank())
        throw Error("Kahler class length does not match the ambient rank");
    if (!solve_in_row_span(s.m_pol.basis, kahler_ambient))
        throw InvariantViolation("Kahler class does not lie in M over Q");
    Rat kn = inner_product(*s.ambient, kahler_ambient, kahler_ambient);
    Rat wn = inner_product(*s.m_prime, free_ref.w, free_ref.w);
    if (kn != wn)
        throw NormMismatchError("Kahler class not norm-matched; rescale (kahler^2 = " +
                                kn.get_str() + ", omega^2 = " + wn.get_str() + ")");

    RatVec x0 = rep.zero_b_period.x * s.t_lat.basis;
    RatVec y0 = rep.zero_b_period.y * s.t_lat.basis;
    rep.triple = make_triple(kahler_ambient, std::move(x0), std::move(y0), s.ambient);
    rep.rotated = hyperkahler_rotate(rep.triple);

    // new period: Kahler class Re phi(i omega); holomorphic form reported
    // with the +omega sign convention (same span, same Picard lattice)
    rep.new_period = make_period(rep.triple.kahler, rep.triple.im_holo, s.ambient);
    rep.picard = picard_lattice(s.ambient, rep.new_period);

    rep.contains_mcheck = true;
    for (int i = 0; i < s.mcheck_in_ambient.rows(); ++i) {
        auto sol = solve_in_row_span(rep.picard.basis, s.mcheck_in_ambient.row(i));
        bool in = sol.has_value() && is_integral(*sol);
        rep.mcheck_membership.push_back(in);
        if (!in) rep.contains_mcheck = false;
    }
    return rep;
}

} // namespace k3mirror
