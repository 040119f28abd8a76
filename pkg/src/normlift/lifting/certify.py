"""Falsification harness for associated triples.

A triple ``(N, c, s)`` at level ``q`` claims that every ``x`` in ``R_q^n``
with ``F(x) = 0 mod t^(nu/q)``, ``nu >= N``, lies within
``t^(([nu/c] - s)/q)`` of an exact root in ``R_q^n``.  Each sample is such an
``x``; it passes when a root in that disc is exhibited and is a
counterexample when an exhaustive search of the disc finds none.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import NotSmoothEnough, PrecisionExhausted
from ..series import InfVal, PuiseuxSeries, format_rational
from .admissible import AssociatedTriple
from .newton import PolySystem, best_minor, jacobian_residual, smooth_lift
from .residue import default_residue_solver
from .roots import puiseux_roots
from .solve import residue_system


@dataclass(frozen=True)
class SampleOutcome:
    index: int
    point: tuple
    nu: int              # residual in units of 1/q
    proximity: Fraction  # required agreement exponent
    status: str          # pass | counterexample | inconclusive
    detail: str = ""
    root: tuple | None = None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "point": [c.to_json() for c in self.point],
            "nu": self.nu,
            "proximity": format_rational(self.proximity),
            "status": self.status,
            "detail": self.detail,
        }


@dataclass
class CertificationReport:
    triple: AssociatedTriple
    outcomes: list = field(default_factory=list)
    shortfall: int = 0  # requested samples the sampler failed to produce

    @property
    def verdict(self) -> str:
        if any(o.status == "counterexample" for o in self.outcomes):
            return "counterexample"
        if self.shortfall or any(o.status == "inconclusive" for o in self.outcomes):
            return "inconclusive"
        return "pass"

    @property
    def counterexamples(self) -> list:
        return [o for o in self.outcomes if o.status == "counterexample"]

    def to_json(self) -> dict:
        t = self.triple
        return {
            "verdict": self.verdict,
            "triple": [t.N, t.c, t.s],
            "q": t.q,
            "samples": [o.to_json() for o in self.outcomes],
            "shortfall": self.shortfall,
        }


def _residual_units(F: PolySystem, point, q: int):
    v = F.residual_val(point)
    if v == math.inf:
        return None
    return math.floor(v * q)


def _random_coeff(rng: random.Random, field):
    if field.is_finite:
        return rng.randrange(field.p)
    return rng.randint(-3, 3)


def _sample_point(rng, F: PolySystem, residues, q: int, depth: int):
    base = rng.choice(residues) if residues else tuple(_random_coeff(rng, F.field) for _ in range(F.n_vars))
    pt = []
    for b in base:
        terms = {0: b}
        for k in range(1, depth + 1):
            if rng.random() < 0.5:
                terms[k] = _random_coeff(rng, F.field)
        pt.append(PuiseuxSeries(F.field, q, terms))
    return tuple(pt)


def check_sample(F: PolySystem, triple: AssociatedTriple, point, index: int = 0,
                 working=None) -> SampleOutcome:
    """Decide one approximate solution against the triple's promise."""
    q = triple.q
    point = tuple(c.as_exact() for c in point)
    nu = _residual_units(F, point, q)
    if nu is None:
        return SampleOutcome(index, point, -1, Fraction(0), "pass", "exact root", point)
    prox = triple.proximity(nu)
    if nu < triple.N:
        return SampleOutcome(index, point, nu, prox, "inconclusive", "residual below N")
    working = Fraction(working) if working is not None else max(Fraction(nu, q) + 4, 2 * prox + 2)

    try:
        minor = best_minor(F, point)
        e = jacobian_residual(F, point, minor)
        if not isinstance(e, InfVal) and F.residual_val(point) - e >= prox:
            y = smooth_lift(F, point, working, minor=minor)
            return SampleOutcome(index, point, nu, prox, "pass", "Newton lift", y)
    except (NotSmoothEnough, PrecisionExhausted):
        pass

    if F.n_vars == 1:
        f = next(g for g in F if not g.is_zero())
        center = point[0].truncate(prox).as_exact() if prox > 0 else PuiseuxSeries.zero(F.field)
        radius = max(prox, Fraction(0))
        search = puiseux_roots(f, working, center=center, radius=radius, ring_q=q)
        for root in search.roots:
            y = (root.value,)
            if F.residual_val(y) >= working:
                return SampleOutcome(index, point, nu, prox, "pass", f"{root.kind} root in the disc", y)
        if search.complete:
            return SampleOutcome(
                index, point, nu, prox, "counterexample",
                f"no root of F in R_{q} within t^{radius}; "
                f"val F <= {search.max_residual} on that disc")
        return SampleOutcome(index, point, nu, prox, "inconclusive", "disc search left open branches")
    return SampleOutcome(index, point, nu, prox, "inconclusive", "singular sample in several variables")


def certify_triple(F, triple: AssociatedTriple, samples: int, seed: int, *,
                   points: Sequence = (), depth: int = 4, max_attempts: int | None = None,
                   working=None) -> CertificationReport:
    """Test ``samples`` seeded approximate solutions (plus any explicit
    ``points``) against the triple.  Identical seeds give identical reports."""
    F = PolySystem.of(F)
    if samples < 0:
        raise ValueError("samples must be non-negative")
    report = CertificationReport(triple)
    idx = 0
    for pt in points:
        pt = tuple(c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(F.field, c) for c in pt)
        report.outcomes.append(check_sample(F, triple, pt, idx, working))
        idx += 1
    if samples == 0:
        return report
    rng = random.Random(seed)
    residues = default_residue_solver(F.field, budget=5000)(residue_system(F), F.n_vars).points
    attempts = max_attempts if max_attempts is not None else 200 * samples
    found = 0
    for _ in range(attempts):
        if found == samples:
            break
        pt = _sample_point(rng, F, residues, triple.q, depth * triple.q)
        nu = _residual_units(F, pt, triple.q)
        if nu is not None and nu < triple.N:
            continue
        report.outcomes.append(check_sample(F, triple, pt, idx, working))
        idx += 1
        found += 1
    report.shortfall = samples - found
    return report
