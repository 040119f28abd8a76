"""Acceptance suite: one PASS/FAIL line per criterion, exact comparisons.

Run under pytest (lines are echoed in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import itertools
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (eisenstein_exponents, hilbert_brute, independent, intersection_is_zero, places_of,  # noqa: E402
                     random_smooth_system, sort_sign, wedge_by_expansion)

from normlift.errors import Infeasible, NotFoundWithinBound, RefusedNonMember  # noqa: E402
from normlift.fields import GF, QQ  # noqa: E402
from normlift.lifting import (AssociatedTriple, certify_triple, combine_admissible_components,  # noqa: E402
                             combine_admissible_smooth, greenberg_constants, jacobian_residual,
                             smooth_lift, solve_in_R_infty)
from normlift.localglobal import (REAL, Conic, Place, global_membership_decide, hilbert_symbol,  # noqa: E402
                                  local_obstructions, relevant_places, verify_witness, witness_search)
from normlift.milnor import (IteratedLaurentField, KummerExtension, LaurentPolynomial, MonomialElem,  # noqa: E402
                             UnitClassModD, WedgeClass, base_space, expand_and_verify, kummer_norm_class,
                             norm_witness, ramification_certify, wedge)
from normlift.pointfinder import cw_search, point_over_laurent  # noqa: E402
from normlift.poly import SeriesPoly, eval_poly, parse_series  # noqa: E402
from normlift.series import INF, PuiseuxSeries, invert_unit  # noqa: E402

RESULTS: list = []


def record(number: int, title: str, ok: bool, detail: str, started: float):
    line = f"ACCEPTANCE {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail} ({time.time() - started:.1f}s)"
    RESULTS.append(line)
    print(line, flush=True)
    assert ok, line


# 1 -----------------------------------------------------------------------------------


def _rand_exact(rng, field, q):
    coeff = (lambda: rng.randrange(field.p)) if field.is_finite else (lambda: Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
    return PuiseuxSeries(field, q, {rng.randrange(0, 4 * q): coeff() for _ in range(rng.randint(1, 4))})


def test_01_series_ring_identities():
    t0 = time.time()
    rng = random.Random(1)
    checked = failures = 0
    while checked < 1000:
        field = rng.choice([QQ, GF(5)])
        a, b, c = (_rand_exact(rng, field, rng.choice([1, 2, 3, 4, 5, 6])) for _ in range(3))
        kind = checked % 4
        if kind == 0:
            ok = (a * b) * c == a * (b * c)
        elif kind == 1:
            ok = a * (b + c) == a * b + a * c
        elif kind == 2:
            if a.is_zero() or b.is_zero():
                continue
            ok = (a * b).val() == a.val() + b.val()
        else:
            if a.is_zero():
                continue
            mu = rng.randint(1, 8)
            ok = (a * invert_unit(a, mu)).congruent(PuiseuxSeries.constant(field, 1), mu)
        checked += 1
        failures += not ok
    record(1, "series ring suite", failures == 0, f"{checked} identities, {failures} failures", t0)


# 2 -----------------------------------------------------------------------------------


def test_02_newton_hensel_contract():
    t0 = time.time()
    f = SeriesPoly.parse("x^2 - (1+t)", QQ, ["x"])
    (y,) = smooth_lift([f], [PuiseuxSeries.constant(QQ, 1)], 20)
    y20 = y.truncate(20).as_exact()
    squares_back = (y20 * y20).congruent(parse_series("1+t", QQ), 20)
    rng = random.Random(2)
    bad = 0
    for _ in range(200):
        F, x = random_smooth_system(rng, rng.choice([1, 2]))
        nu, e = F.residual_val(x), jacobian_residual(F, x)
        out = smooth_lift(F, x, 12)
        if not (all(v.val_bound() >= 12 for v in F.evaluate(out))
                and all((o - xi).val_bound() >= nu - e for o, xi in zip(out, x))):
            bad += 1
    record(2, "Newton/Hensel contract", squares_back and bad == 0,
           f"sqrt(1+t) squares back mod t^20: {squares_back}; 200 smooth instances, {bad} violations", t0)


# 3 -----------------------------------------------------------------------------------


def _ref_smooth(minor, parts):
    """Reference: N = 2 + 2 q0 max{N'/q0', N_I/q0_I}, c = 2 max{c', c_I},
    s = 1 + q0 max{s'/q0', s_I/q0_I}, q0 = q0' prod q0_I."""
    q0 = minor[0]
    for p in parts:
        q0 *= p[0]
    best_n = best_s = None
    best_c = 0
    for q, n, c, s in [minor] + list(parts):
        best_n = Fraction(n, q) if best_n is None or Fraction(n, q) > best_n else best_n
        best_s = Fraction(s, q) if best_s is None or Fraction(s, q) > best_s else best_s
        best_c = c if c > best_c else best_c
    N, S = 2 + 2 * q0 * best_n, 1 + q0 * best_s
    return (q0, -(-N.numerator // N.denominator), 2 * best_c, -(-S.numerator // S.denominator))


def _ref_components(q0p, u, v, w, comps):
    """Reference: q0 = q0' prod q0_j, N = uw (q0/q0') (max N_j/q0_j + v),
    c = uw max c_j, s = 1 + (q0/q0') (v + max s_j/q0_j)."""
    q0 = q0p
    for comp in comps:
        q0 *= comp[0]
    mn = max(Fraction(n, q) for q, n, _, _ in comps)
    ms = max(Fraction(s, q) for q, _, _, s in comps)
    mc = max(c for _, _, c, _ in comps)
    N = u * w * Fraction(q0, q0p) * (mn + v)
    S = 1 + Fraction(q0, q0p) * (v + ms)
    return (q0, math.ceil(N), u * w * mc, math.ceil(S))


def test_03_constant_calculus():
    t0 = time.time()
    rng = random.Random(3)

    def quad():
        return (rng.randint(1, 4), rng.randint(1, 40), rng.randint(1, 9), rng.randint(0, 9))
    mism = 0
    for _ in range(50):
        minor, parts = quad(), [quad() for _ in range(rng.randint(0, 3))]
        mism += combine_admissible_smooth(minor, parts).as_tuple() != _ref_smooth(minor, parts)
        comps = [quad() for _ in range(rng.randint(1, 3))]
        args = (rng.randint(1, 3), len(comps), rng.randint(0, 5), rng.randint(1, 3))
        mism += combine_admissible_components(*args, comps).as_tuple() != _ref_components(*args, comps)
    trips = 0
    for _ in range(50):
        q = quad()
        g = greenberg_constants(q)
        trips += not (g.M * q[0] == q[1] and g.gamma == q[2] and g.sigma * q[0] == q[3] + 1)
    record(3, "constant calculus", mism == 0 and trips == 0,
           f"100 combinations vs reference, {mism} mismatches; 50 Greenberg round-trips, {trips} failures", t0)


# 4 -----------------------------------------------------------------------------------


def test_04_certify_triple_falsification():
    t0 = time.time()
    f = SeriesPoly.parse("x^2 - t^3", QQ, ["x"])
    t = PuiseuxSeries.gen(QQ)
    rep = certify_triple([f], AssociatedTriple(1, 1, 0, 1), 0, seed=0, points=[[t]])
    refuted = rep.verdict == "counterexample" and rep.counterexamples[0].point[0] == t
    sol = solve_in_R_infty([f], q_cap=4)
    root = PuiseuxSeries.monomial(QQ, 1, Fraction(3, 2))
    solved = (sol.solved and sol.q == 2 and sol.precision == INF
              and sol.point[0] in (root, -root) and eval_poly(f, sol.point).is_exact_zero())
    ce = rep.counterexamples[0] if refuted else None
    detail = (f"x=t refutes (1,1,0) at q=1 (nu={ce.nu}, proximity {ce.proximity})" if ce else "no counterexample") \
        + f"; solve_in_R_infty: {sol.verdict} q={sol.q} root {sol.point[0] if sol.point else None}"
    record(4, "certify_triple falsification", refuted and solved, detail, t0)


# 5 -----------------------------------------------------------------------------------


def test_05_chevalley_warning_sweep():
    t0 = time.time()
    monos = [e for e in itertools.product(range(3), repeat=3) if sum(e) == 2]
    forms = misses = 0
    for p in (2, 3):
        F = GF(p)
        for coeffs in itertools.product(range(p), repeat=len(monos)):
            terms = {m: c for m, c in zip(monos, coeffs) if c}
            if not terms:
                continue
            forms += 1
            pt = cw_search(terms, field=F, n_vars=3)
            if pt is None or not any(pt.coords):
                misses += 1
                continue
            value = sum(c * math.prod(x ** k for x, k in zip(pt.coords, m)) for m, c in terms.items()) % p
            misses += value != 0
    record(5, "Chevalley-Warning sweep", misses == 0 and forms == 63 + 728,
           f"{forms} nonzero ternary quadratic forms over F_2 and F_3, {misses} misses", t0)


# 6 -----------------------------------------------------------------------------------


def test_06_truncate_solve_lift():
    t0 = time.time()
    F5 = GF(5)
    f = SeriesPoly.parse("x^2 + y^2 - (1+t)*z^2", F5, ["x", "y", "z"])
    r = point_over_laurent(f, nu_max=16)
    ok = r.verdict == "found" and r.point.residue() == (1, 2, 0)
    value = eval_poly(f, r.point.coords) if r.point else None
    ok = ok and value.val_bound() >= 16 and any(c.val() == 0 for c in r.point.coords)
    record(6, "truncate-solve-lift over F_5((t))", ok,
           f"point {[str(c) for c in r.point.coords] if r.point else None}, "
           f"val f(point) = {'inf' if value is not None and value.val_bound() == INF else value}", t0)


# 7 -----------------------------------------------------------------------------------


def _relabel(x, perm):
    coords = {}
    for idx, a in x.coords.items():
        image = [perm[i] for i in idx]
        key = tuple(sorted(image))
        coords[key] = (coords.get(key, 0) + sort_sign(image) * a) % x.d
    return WedgeClass(x.d, x.m, x.j, coords)


def test_07_milnor_model_suite():
    t0 = time.time()
    fails = checks = 0
    for d in (2, 3, 5):
        for m in range(1, 5):
            vecs = list(itertools.product(range(d), repeat=m))
            basis = [tuple(int(i == k) for i in range(m)) for k in range(m)]
            pairs = (itertools.product(vecs, repeat=2) if d ** m <= 125
                     else itertools.chain(itertools.product(vecs, basis), itertools.product(basis, vecs)))
            for v, w in pairs:
                a, b = UnitClassModD(d, v), UnitClassModD(d, w)
                vw = wedge([a, b])
                checks += 1
                fails += not (vw.coords == wedge_by_expansion([v, w], d) and vw == wedge([b, a]).scale(-1)
                              and wedge([a, a]).is_zero())
            for j in range(1, m + 1):
                for idx in itertools.product(range(m), repeat=j):
                    checks += 1
                    fails += wedge([UnitClassModD(d, basis[i]) for i in idx]).coords != \
                        wedge_by_expansion([basis[i] for i in idx], d)
    # projection formula and tower composition on all basis classes
    for d, m in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3)]:
        base = base_space(d, m)
        nonzero = [v for v in itertools.product(range(d), repeat=m) if any(v)]
        for u in nonzero:
            L = KummerExtension.of(d, m, u)
            for ja in range(0, m + 1):
                alist = ([WedgeClass.basis(d, m, I) for I in itertools.combinations(range(m), ja)]
                         if ja else [WedgeClass(d, m, 0, {(): 1})])
                for a in alist:
                    for jb in range(1, m + 2 - ja):
                        for I in itertools.combinations(range(m + 1), jb):
                            y = WedgeClass.basis(d, m + 1, I)
                            checks += 1
                            fails += kummer_norm_class(L, L.restrict(a) ^ y) != a ^ kummer_norm_class(L, y)
        for u1, u2 in itertools.product(nonzero, repeat=2):
            if not independent([u1, u2], d):
                continue
            U1, U2 = UnitClassModD(d, u1), UnitClassModD(d, u2)
            L1, L2 = KummerExtension(base, U1), KummerExtension(base, U2)
            L12, L21 = KummerExtension(L1.space, U2.extend([0])), KummerExtension(L2.space, U1.extend([0]))
            for j in range(1, m + 3):
                for I in itertools.combinations(range(m + 2), j):
                    x = WedgeClass.basis(d, m + 2, I)
                    via1 = kummer_norm_class(L1, kummer_norm_class(L12, x))
                    via2 = kummer_norm_class(L2, kummer_norm_class(L21, _relabel(x, list(range(m)) + [m + 1, m])))
                    checks += 1
                    fails += not base.equal(via1, via2)
    record(7, "Milnor model suite", fails == 0, f"{checks} identities, {fails} failures", t0)


# 8 -----------------------------------------------------------------------------------


def test_08_ramification_oracle():
    t0 = time.time()
    rng = random.Random(8)
    refuted = mismatched = 0
    for _ in range(500):
        d = rng.choice([2, 3, 5])
        m = rng.randint(1, 3)
        coeffs, _level = eisenstein_exponents(rng, d, m)
        cs = [None] * (d + 1)
        cs[d] = MonomialElem((0,) * m)
        for i, e in coeffs.items():
            cs[i] = MonomialElem(e)
        cert = ramification_certify(LaurentPolynomial(IteratedLaurentField(m), tuple(cs)), d)
        refuted += not cert.certified
        # direct d-th power test on the valuation vector of f(0)
        mismatched += cert.f0_class.vec != tuple(a % d for a in coeffs[0]) or not any(a % d for a in coeffs[0])
    record(8, "ramification certificate oracle", refuted == 0 and mismatched == 0,
           f"500 Eisenstein-type polynomials, {refuted} refuted, {mismatched} class mismatches", t0)


# 9 -----------------------------------------------------------------------------------


def _witness_case(d, m1, us, cs):
    """(verified, infeasible_consistent) for one input."""
    try:
        dec = norm_witness(d, m1, [UnitClassModD(d, u) for u in us], [UnitClassModD(d, c) for c in cs])
    except Infeasible:
        return None, independent(us, d) and intersection_is_zero(us, cs, d)
    consistent = dec.case_tag == "dependent" if not independent(us, d) else not intersection_is_zero(us, cs, d)
    return expand_and_verify(dec), consistent


def test_09_witness_fuzz():
    t0 = time.time()
    rng = random.Random(9)
    feasible = unverified = 0
    while feasible < 500:
        d = rng.choice([2, 3, 5])
        m1 = rng.randint(2, 5)
        pool = list(itertools.product(range(d), repeat=m1))
        us = [rng.choice(pool) for _ in range(rng.randint(1, m1))]
        cs = rng.sample(pool, rng.randint(2, min(len(pool), m1 + 2)))
        verified, consistent = _witness_case(d, m1, us, cs)
        if verified is None:
            continue
        feasible += 1
        unverified += not verified or not consistent
    # Infeasible exactly when dim(W ^ W') = 0: full input enumeration on the smallest spaces
    cross = wrong = 0
    for d, m1 in [(2, 2), (2, 3), (3, 2)]:
        vecs = list(itertools.product(range(d), repeat=m1))
        for u in vecs:
            if not any(u):
                continue
            for size in (2, 3):
                for cs in itertools.combinations(vecs, size):
                    _, consistent = _witness_case(d, m1, [u], list(cs))
                    cross += 1
                    wrong += not consistent
    # and randomized inputs up to m+1 = 4, each against subspace enumeration
    for _ in range(1500):
        d, m1 = rng.choice([2, 3]), rng.randint(2, 4)
        pool = list(itertools.product(range(d), repeat=m1))
        us = [rng.choice(pool) for _ in range(rng.randint(1, m1))]
        cs = rng.sample(pool, rng.randint(2, min(len(pool), m1 + 1)))
        _, consistent = _witness_case(d, m1, us, cs)
        cross += 1
        wrong += not consistent
    record(9, "norm witness fuzz", unverified == 0 and wrong == 0,
           f"{feasible} feasible inputs, {unverified} unverified; "
           f"{cross} Infeasible cross-checks, {wrong} disagreements", t0)


# 10 ----------------------------------------------------------------------------------


def test_10_hilbert_symbols():
    t0 = time.time()
    rng = random.Random(10)
    violations = 0
    for _ in range(500):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 500), rng.randint(1, 50))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 500), rng.randint(1, 50))
        violations += math.prod(hilbert_symbol(a, b, v) for v in relevant_places(a, b)) != 1
    checked = disagree = 0
    for a in range(-30, 31):
        for b in range(-30, 31):
            if a and b:
                for p in places_of(a, b):
                    checked += 1
                    disagree += hilbert_symbol(a, b, REAL if p == 0 else Place(p)) != hilbert_brute(a, b, p)
    minus_one = hilbert_symbol(-1, -1, Place(2)) == -1
    record(10, "Hilbert symbol suite", violations == 0 and disagree == 0 and minus_one,
           f"product formula on 500 pairs, {violations} violations; {checked} symbols vs brute force, "
           f"{disagree} disagreements; (-1,-1)_2 = {hilbert_symbol(-1, -1, Place(2))}", t0)


# 11 ----------------------------------------------------------------------------------


def test_11_conic_local_global():
    t0 = time.time()
    xs = sorted({Fraction(s * n, den) for n in range(1, 21) for den in range(1, 21) for s in (1, -1)})
    members = found = inconclusive = unsound = nonmembers = 0
    for a in range(-10, 11):
        for b in range(-10, 11):
            if not a or not b:
                continue
            C = Conic(a, b)
            for x in xs:
                if global_membership_decide(x, C):
                    members += 1
                    try:
                        w = witness_search(x, C, bound=50)
                    except NotFoundWithinBound:
                        inconclusive += 1
                        continue
                    found += 1
                    unsound += not verify_witness(w, C)
                else:
                    nonmembers += 1
                    unsound += local_obstructions(x, C) != [REAL]
                    try:
                        witness_search(x, C, bound=50)
                        unsound += 1
                    except RefusedNonMember:
                        pass
                    try:
                        witness_search(x, C, bound=50, force=True)
                        unsound += 1
                    except NotFoundWithinBound:
                        pass
    rate = inconclusive / members if members else 0.0
    record(11, "local-global for conics", unsound == 0 and rate <= 0.05,
           f"{members} members, {found} verified witnesses, {inconclusive} inconclusive ({100 * rate:.2f}%); "
           f"{nonmembers} non-members, all with the real obstruction and no witness; {unsound} unsound", t0)


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
