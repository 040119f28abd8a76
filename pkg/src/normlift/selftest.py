"""Reduced-size property checks per module, run by ``normlift selftest``."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Callable

from .errors import ParseError
from .fields import GF, QQ
from .series import PuiseuxSeries, invert_unit

CheckResult = tuple  # (name, passed, detail)


def _rand_series(rng, field, q, n_terms=4):
    terms = {rng.randrange(0, 3 * q): (rng.randrange(field.p) if field.is_finite else rng.randint(-4, 4))
             for _ in range(n_terms)}
    return PuiseuxSeries(field, q, terms)


def check_series_core(seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    failures = 0
    for i in range(200):
        field = QQ if i % 2 else GF(5)
        q = rng.choice([1, 2, 3, 6])
        a, b, c = (_rand_series(rng, field, q) for _ in range(3))
        if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c:
            failures += 1
        if not a.is_zero() and not b.is_zero() and (a * b).val() != a.val() + b.val():
            failures += 1
        if not a.is_zero():
            inv = invert_unit(a, 5)
            if not (a * inv).congruent(PuiseuxSeries.constant(field, 1), 5):
                failures += 1
    return [("series ring identities", failures == 0, f"{failures} failures in 200 rounds")]


def check_lifting(seed: int = 0) -> list[CheckResult]:
    from .lifting import AssociatedTriple, certify_triple, smooth_lift, solve_in_R_infty
    from .poly import SeriesPoly
    out = []
    f = SeriesPoly.parse("x^2 - (1+t)", QQ, ["x"])
    (y,) = smooth_lift([f], [PuiseuxSeries.constant(QQ, 1)], 20)
    one_plus_t = PuiseuxSeries(QQ, 1, {0: 1, 1: 1})
    out.append(("Newton lift squares back", (y * y).congruent(one_plus_t, 20), str(y.truncate(4))))
    g = SeriesPoly.parse("x^2 - t^3", QQ, ["x"])
    rep = certify_triple([g], AssociatedTriple(1, 1, 0, 1), 0, seed, points=[[PuiseuxSeries.gen(QQ)]])
    out.append(("triple (1,1,0) refuted for x^2 - t^3", rep.verdict == "counterexample", rep.verdict))
    sol = solve_in_R_infty([g], q_cap=4)
    ok = sol.solved and sol.q == 2 and sol.precision == float("inf")
    out.append(("exact ramified root t^(3/2)", ok, sol.detail))
    return out


def check_pointfinder(seed: int = 0) -> list[CheckResult]:
    from .pointfinder import point_over_laurent, verify_c1_batch
    from .poly import SeriesPoly
    out = []
    rep = verify_c1_batch(2, 2, 2)
    out.append(("Chevalley-Warning over F_2", rep.all_found, f"{rep.checked} forms"))
    f = SeriesPoly.parse("x^2 + y^2 - (1+t)*z^2", GF(5), ["x", "y", "z"])
    r = point_over_laurent(f, nu_max=16)
    ok = r.verdict == "found" and r.point.residue() == (1, 2, 0) and r.precision >= 16
    out.append(("truncate-solve-lift over F_5((t))", ok, r.detail))
    return out


def check_milnor(seed: int = 0) -> list[CheckResult]:
    from .milnor import UnitClassModD, expand_and_verify, norm_witness, wedge
    from .errors import Infeasible
    rng = random.Random(seed)
    failures = 0
    for d in (2, 3):
        for v, w in product(product(range(d), repeat=3), repeat=2):
            a, b = UnitClassModD(d, v), UnitClassModD(d, w)
            if wedge([a, b]) != wedge([b, a]).scale(-1) or not wedge([a, a]).is_zero():
                failures += 1
    witness_fail = 0
    for _ in range(100):
        d = rng.choice([2, 3, 5])
        m1 = rng.randint(2, 4)
        pool = list(product(range(d), repeat=m1))
        cs = [UnitClassModD(d, v) for v in rng.sample(pool, min(len(pool), rng.randint(2, m1 + 1)))]
        us = [UnitClassModD(d, rng.choice(pool)) for _ in range(rng.randint(1, m1))]
        try:
            if not expand_and_verify(norm_witness(d, m1, us, cs)):
                witness_fail += 1
        except Infeasible:
            pass
    return [("exterior algebra laws", failures == 0, f"{failures} failures"),
            ("norm witnesses verify", witness_fail == 0, f"{witness_fail} failures in 100 draws")]


def check_localglobal(seed: int = 0) -> list[CheckResult]:
    from .localglobal import (Conic, Place, global_membership_decide, hilbert_symbol, relevant_places,
                              verify_witness, witness_search)
    rng = random.Random(seed)
    bad = 0
    for _ in range(200):
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 9))
        b = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 9))
        prod_ = 1
        for v in relevant_places(a, b):
            prod_ *= hilbert_symbol(a, b, v)
        bad += prod_ != 1
    out = [("Hilbert product formula", bad == 0, f"{bad} violations"),
           ("(-1,-1) at 2 is -1", hilbert_symbol(-1, -1, Place(2)) == -1, "")]
    C = Conic(-1, -1)
    ok = not global_membership_decide(-2, C) and verify_witness(witness_search(2, C), C)
    out.append(("conic membership and witness", ok, ""))
    return out


SUITES: dict[str, Callable] = {
    "series_core": check_series_core,
    "lifting": check_lifting,
    "pointfinder": check_pointfinder,
    "milnor": check_milnor,
    "localglobal": check_localglobal,
}


def run_selftest(scope: str = "all", seed: int = 0) -> list[tuple]:
    """Return ``(suite, name, passed, detail)`` records."""
    if scope == "all":
        names = list(SUITES)
    elif scope in SUITES:
        names = [scope]
    else:
        raise ParseError(f"unknown selftest scope {scope!r}; choose from all, {', '.join(SUITES)}")
    records = []
    for name in names:
        for check, ok, detail in SUITES[name](seed):
            records.append((name, check, ok, detail))
    return records


__all__ = ["run_selftest", "SUITES"]
