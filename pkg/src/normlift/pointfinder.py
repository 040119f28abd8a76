"""Points on projective hypersurfaces over finite fields and series fields.

Residue-level search enumerates projective representatives whose first
nonzero coordinate is 1, in lexicographic order with residues ranked
``1, 2, ..., p-1, 0``.  Over ``k((t))`` a residue point is lifted by Newton's
method along one coordinate; singular residue points are retried along
one-variable sections, whose roots may need ramification ``t^(1/q)``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Callable, Sequence

from .errors import (BudgetExceeded, NotSmoothEnough, PrecisionExhausted, PrecisionTooLow,
                     RegimeError)
from .fields import FieldDescriptor
from .lifting.newton import smooth_lift
from .lifting.residue import (ResidueSolutions, default_residue_solver, eval_residue, rational_sort_key,
                              univariate_roots)
from .lifting.roots import puiseux_roots
from .poly import SeriesPoly
from .series import INF, PuiseuxSeries, format_rational


@dataclass(frozen=True)
class Hypersurface:
    form: SeriesPoly
    d: int
    n: int

    @classmethod
    def of(cls, form: SeriesPoly) -> Hypersurface:
        d = form.homogeneous_degree()
        if d is None:
            raise ValueError("hypersurface form must be homogeneous")
        return cls(form, d, form.n_vars - 1)

    @property
    def c1_regime(self) -> bool:
        return self.d <= self.n


@dataclass(frozen=True)
class ProjectivePoint:
    """Coordinates with ``coords[normalization]`` of valuation 0."""

    coords: tuple
    normalization: int

    def __post_init__(self):
        c = self.coords[self.normalization]
        if isinstance(c, PuiseuxSeries) and c.val() != 0:
            raise ValueError("normalizing coordinate must be a unit")

    def residue(self) -> tuple:
        return tuple(c.coeff(0) if isinstance(c, PuiseuxSeries) else c for c in self.coords)

    def to_json(self):
        return [c.to_json() if isinstance(c, PuiseuxSeries) else str(c) for c in self.coords]


@dataclass(frozen=True)
class TruncationSplit:
    f_nu: SeriesPoly
    g_nu: SeriesPoly
    nu: Fraction

    def recompose(self) -> SeriesPoly:
        return self.f_nu + self.g_nu.shift_t(self.nu)


# ---------------------------------------------------------------------------
# residue level


def _as_terms(form) -> dict:
    if isinstance(form, SeriesPoly):
        return form.residue_terms()
    return dict(form)


def _ranked(field: FieldDescriptor) -> list:
    return list(range(1, field.p)) + [0]


def projective_representatives(field: FieldDescriptor, n_vars: int):
    """All points of ``P^(n_vars-1)(F_p)`` in the canonical search order."""
    ranked = _ranked(field)
    for lead in range(n_vars):
        for tail in product(ranked, repeat=n_vars - lead - 1):
            yield (0,) * lead + (1,) + tail


def _random_representative(rng: random.Random, field, n_vars):
    while True:
        v = tuple(rng.randrange(field.p) for _ in range(n_vars))
        if any(v):
            lead = next(i for i, c in enumerate(v) if c)
            inv = field.inv(v[lead])
            return tuple(field.mul(c, inv) for c in v)


def cw_search(form, field: FieldDescriptor | None = None, mode: str = "exhaustive", seed: int = 0,
              budget: int = 1_000_000, n_vars: int | None = None) -> ProjectivePoint | None:
    """First nontrivial zero of a form over F_p, or ``None``.

    ``None`` is definitive in exhaustive mode; random mode raises
    ``BudgetExceeded`` instead of reporting absence.
    """
    if isinstance(form, SeriesPoly):
        field = form.field
        n_vars = form.n_vars
    if field is None or not field.is_finite:
        raise ValueError("cw_search needs a prime field")
    terms = _as_terms(form)
    if n_vars is None:
        n_vars = len(next(iter(terms))) if terms else 1
    if mode == "exhaustive":
        if field.p ** n_vars > budget:
            raise BudgetExceeded(f"{field.p}^{n_vars} points exceed the budget {budget}")
        for v in projective_representatives(field, n_vars):
            if eval_residue(terms, field, v) == 0:
                return ProjectivePoint(v, v.index(1))
        return None
    if mode == "random":
        rng = random.Random(seed)
        for _ in range(budget):
            v = _random_representative(rng, field, n_vars)
            if eval_residue(terms, field, v) == 0:
                return ProjectivePoint(v, v.index(1))
        raise BudgetExceeded(f"no zero among {budget} random points")
    raise ValueError(f"unknown search mode {mode!r}")


def projective_residue_solver(field: FieldDescriptor, budget: int = 200_000,
                              height: int = 4) -> Callable:
    """Projective zeros of a residue form, as ``ResidueSolutions``.

    Complete over F_p within budget and over Q for binary forms; otherwise
    a height-bounded scan.
    """

    def solve(terms: dict, n_vars: int) -> ResidueSolutions:
        if not terms:
            return ResidueSolutions(list(_all_points(field, n_vars, budget, height)), field.is_finite)
        if field.is_finite:
            pts = []
            for i, v in enumerate(projective_representatives(field, n_vars)):
                if i >= budget:
                    return ResidueSolutions(pts, False)
                if eval_residue(terms, field, v) == 0:
                    pts.append(v)
            return ResidueSolutions(pts, True)
        if n_vars == 1:
            return ResidueSolutions([], True)
        if n_vars == 2:
            deg = max(e[1] for e in terms)
            coeffs = [field.zero()] * (deg + 1)
            for e, c in terms.items():
                coeffs[e[1]] = field.add(coeffs[e[1]], c)
            pts = [(Fraction(1), r) for r, _ in univariate_roots(coeffs, field)] if any(coeffs) else []
            if eval_residue(terms, field, (0, 1)) == 0:
                pts.append((Fraction(0), Fraction(1)))
            return ResidueSolutions(pts, True)
        pts = [v for v in _all_points(field, n_vars, budget, height) if eval_residue(terms, field, v) == 0]
        return ResidueSolutions(pts, False)

    return solve


def _all_points(field, n_vars, budget, height):
    if field.is_finite:
        for i, v in enumerate(projective_representatives(field, n_vars)):
            if i >= budget:
                return
            yield v
        return
    from .lifting.residue import _rational_box
    box = sorted(_rational_box(height), key=rational_sort_key)
    count = 0
    for lead in range(n_vars):
        for tail in product(box, repeat=n_vars - lead - 1):
            if count >= budget:
                return
            count += 1
            yield (Fraction(0),) * lead + (Fraction(1),) + tail


# ---------------------------------------------------------------------------
# truncation


def truncate_split(f: SeriesPoly, nu) -> TruncationSplit:
    """``f = f_nu + t^nu g_nu`` with ``f_nu`` supported below ``t^nu``."""
    nu = Fraction(nu)
    low, high = {}, {}
    for e, c in f.items():
        if c.prec < nu:
            raise PrecisionTooLow(f"coefficient of {e} is only known mod t^{c.prec}")
        lo = [(x, a) for x, a in c.items() if x < nu]
        hi = [(x, a) for x, a in c.items() if x >= nu]
        if lo:
            low[e] = PuiseuxSeries.from_exponents(f.field, dict(lo))
        rest = PuiseuxSeries.from_exponents(f.field, dict(hi), c.prec) if hi else PuiseuxSeries.zero(f.field, c.prec)
        high[e] = rest.shift(-nu)
    return TruncationSplit(SeriesPoly(f.field, f.n_vars, low, f.names),
                           SeriesPoly(f.field, f.n_vars, high, f.names), nu)


# ---------------------------------------------------------------------------
# points over Laurent and Puiseux fields


@dataclass(frozen=True)
class LaurentPointReport:
    verdict: str  # found | no-solution-mod-nu | inconclusive
    point: ProjectivePoint | None = None
    precision: Fraction | float | None = None
    q: int | None = None
    nu: Fraction | None = None
    detail: str = ""
    target: Fraction | float | None = None

    def certificate(self) -> dict:
        return {
            "verdict": self.verdict,
            "point": None if self.point is None else self.point.to_json(),
            "precision": None if self.precision is None else format_rational(self.precision),
            "q": self.q,
            "nu": None if self.nu is None else format_rational(self.nu),
            "checked": self.point is not None and self.precision >= (self.target or 0),
            "detail": self.detail,
        }


def doubling_schedule(nu_max) -> list:
    nu_max = Fraction(nu_max)
    out, v = [], Fraction(1)
    while v < nu_max:
        out.append(v)
        v *= 2
    out.append(nu_max)
    return out


def check_point(form: SeriesPoly, coords) -> Fraction | float:
    """Certified residual of a candidate point; ``-inf`` when no coordinate
    is a unit."""
    if not any(c.val() == 0 for c in coords):
        return -INF
    v = form(*coords)
    return INF if v.is_exact_zero() else v.val_bound()


def _found(form, coords, detail, target=None) -> LaurentPointReport:
    coords = tuple(c.normalized() for c in coords)
    prec = check_point(form, coords)
    k = next(i for i, c in enumerate(coords) if c.val() == 0)
    q = math.lcm(1, *(c.q for c in coords))
    return LaurentPointReport("found", ProjectivePoint(coords, k), prec, q, detail=detail, target=target)


def point_over_laurent(Z, residue_solver: Callable | None = None, nu_schedule: Sequence | None = None,
                       q_cap: int = 4, nu_max=16, chart_depth: int = 2) -> LaurentPointReport:
    """Search a point of ``Z`` over ``K(t^(1/q))``, ``q <= q_cap``."""
    Z = Z if isinstance(Z, Hypersurface) else Hypersurface.of(Z)
    f = Z.form
    field = f.field
    schedule = [Fraction(v) for v in (nu_schedule or doubling_schedule(nu_max))]
    working = schedule[-1]
    if f.is_zero():
        one = PuiseuxSeries.constant(field, 1)
        zero = PuiseuxSeries.zero(field)
        return _found(f, (one,) + (zero,) * Z.n, "zero form")
    content = f.content_val()
    if content != 0:
        f = f.shift_t(-content)
    solver = residue_solver or projective_residue_solver(field)
    residues = solver(f.residue_terms(), f.n_vars)
    if not residues.points:
        if residues.complete:
            return LaurentPointReport("no-solution-mod-nu", nu=schedule[0],
                                      detail="the reduced form has no projective zero")
        return LaurentPointReport("inconclusive", detail="no residue zero within the search box")

    for xbar in residues.points:
        start = [PuiseuxSeries.constant(field, c) for c in xbar]
        if check_point(f, start) == INF:
            return _found(f, start, "residue point is an exact zero", working)
        for j in range(f.n_vars):
            if f.partial(j)(*start).val() != 0:
                try:
                    y = smooth_lift([f], start, working, minor=((0,), (j,)))
                except (NotSmoothEnough, PrecisionExhausted):
                    continue
                return _found(f, y, f"Newton lift in coordinate {j}", working)

    for xbar in residues.points:
        start = [PuiseuxSeries.constant(field, c) for c in xbar]
        for j in range(f.n_vars):
            section = f.substitute({i: start[i] for i in range(f.n_vars) if i != j})
            terms = {(e[j],): c for e, c in section.items()}
            g = SeriesPoly(field, 1, terms)
            if g.is_zero():
                continue
            try:
                search = puiseux_roots(g, working, q_cap=q_cap)
            except PrecisionTooLow:
                continue
            for root in sorted(search.roots, key=lambda r: r.q):
                pt = list(start)
                pt[j] = root.value
                if check_point(f, pt) >= working:
                    return _found(f, pt, f"ramified section root in coordinate {j}", working)
    for xbar in residues.points:
        k = next(i for i, c in enumerate(xbar) if c != 0)
        chart = f.substitute({k: PuiseuxSeries.constant(field, xbar[k])}).drop_variable(k)
        rest = [c for i, c in enumerate(xbar) if i != k]
        ys = _affine_point(chart, rest, working, q_cap, depth=chart_depth)
        if ys is not None:
            pt = list(ys)
            pt.insert(k, PuiseuxSeries.constant(field, xbar[k]))
            if check_point(f, pt) >= working:
                return _found(f, pt, "lift through a ramified affine chart", working)
    return LaurentPointReport("inconclusive", detail="residue zeros did not lift within the ramification cap")


def _ram_index(coords) -> int:
    return math.lcm(1, *(c.normalized().q for c in coords))


def _affine_point(g: SeriesPoly, center, working, q_cap: int, depth: int, budget: int = 50_000):
    """A point ``y = center mod t^(1/q)`` with ``val g(y) >= working`` and
    ramification index at most ``q_cap``, or ``None``.

    Substitutes ``Y_i = center_i + t^(1/q) Z_i``, divides out the content,
    Newton-lifts smooth residue zeros of the result and recurses on the
    singular ones.
    """
    field = g.field
    n = g.n_vars
    base = [PuiseuxSeries.constant(field, c) if not isinstance(c, PuiseuxSeries) else c for c in center]
    if n == 0 or depth < 0:
        return None
    solver = default_residue_solver(field, budget=budget)
    for q in range(1, q_cap + 1):
        step = Fraction(1, q)
        h = g
        for i in range(n):
            h = h.affine_substitute(i, base[i], step)
        c = h.content_val()
        if not isinstance(c, Fraction):
            return tuple(base)
        if c >= working:
            return tuple(base) if _ram_index(base) <= q_cap else None
        h = h.shift_t(-c)
        residues = solver([h.residue_terms()], n)
        singular = []
        for zbar in residues.points:
            z0 = [PuiseuxSeries.constant(field, v) for v in zbar]
            z = None
            for j in range(n):
                if h.partial(j)(*z0).val() == 0:
                    try:
                        z = smooth_lift([h], z0, working - c, minor=((0,), (j,)))
                    except (NotSmoothEnough, PrecisionExhausted):
                        continue
                    break
            if z is None:
                singular.append(z0)
                continue
            y = [b + zi.shift(step) for b, zi in zip(base, z)]
            if _ram_index(y) <= q_cap:
                return tuple(y)
        for z0 in singular:
            y0 = [b + zi.shift(step) for b, zi in zip(base, z0)]
            if _ram_index(y0) > q_cap:
                continue
            y = _affine_point(g, y0, working, q_cap, depth - 1, budget)
            if y is not None:
                return y
    return None


# ---------------------------------------------------------------------------
# Chevalley-Warning batch check


def monomials(n_vars: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n_vars), d):
        e = [0] * n_vars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass
class C1BatchReport:
    p: int
    n: int
    d: int
    checked: int
    failures: list

    @property
    def all_found(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "d": self.d, "checked": self.checked,
                "failures": [[[list(e), c] for e, c in sorted(f.items())] for f in self.failures]}


def verify_c1_batch(p: int, n: int, d: int, sample="all", seed: int = 0,
                    budget: int = 2_000_000) -> C1BatchReport:
    """Check that every (or a sample of) degree-``d`` form in ``n+1``
    variables over F_p has a nontrivial zero."""
    if d < 1:
        raise ValueError("degree must be positive")
    if d > n:
        raise RegimeError(f"d={d} > n={n}: outside the d <= n regime")
    field = FieldDescriptor.prime(p)
    mons = monomials(n + 1, d)
    total = p ** len(mons)
    if sample == "all":
        if total > budget:
            raise BudgetExceeded(f"{total} forms exceed the budget {budget}")
        coeff_vectors = product(range(p), repeat=len(mons))
    else:
        rng = random.Random(seed)
        coeff_vectors = (tuple(rng.randrange(p) for _ in mons) for _ in range(int(sample)))
    checked, failures = 0, []
    for coeffs in coeff_vectors:
        terms = {e: c for e, c in zip(mons, coeffs) if c}
        checked += 1
        if cw_search(terms, field, n_vars=n + 1) is None:
            failures.append(terms)
    return C1BatchReport(p, n, d, checked, failures)
