"""Solving polynomial systems in ``R_infty`` from solutions of congruences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import NotSmoothEnough, PrecisionExhausted
from ..series import INF, PuiseuxSeries, format_rational
from .newton import PolySystem, smooth_lift
from .residue import ResidueSolver, default_residue_solver
from .roots import puiseux_roots


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a search for a solution in ``R_infty``.

    ``verdict`` is ``solved``, ``no-solution-mod-nu`` (``nu`` is then the
    least scheduled exponent whose congruence was shown unsolvable) or
    ``inconclusive``.
    """

    verdict: str
    point: tuple | None = None
    q: int | None = None
    nu: Fraction | None = None
    precision: Fraction | float | None = None
    detail: str = ""

    @property
    def solved(self) -> bool:
        return self.verdict == "solved"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "nu": None if self.nu is None else format_rational(self.nu),
            "q": self.q,
            "point": None if self.point is None else [c.to_json() for c in self.point],
            "precision": None if self.precision is None else format_rational(self.precision),
            "detail": self.detail,
        }


def _ram(point) -> int:
    from math import lcm
    return lcm(1, *(c.normalized().q for c in point))


def _solved(F: PolySystem, point, detail: str) -> SolveReport:
    point = tuple(c.normalized() for c in point)
    values = F.evaluate(point)
    prec = INF if all(v.is_exact_zero() for v in values) else min(v.val_bound() for v in values)
    return SolveReport("solved", point, _ram(point), precision=prec, detail=detail)


def residue_system(F: PolySystem) -> list[dict]:
    return [f.residue_terms() for f in F]


def _negative(schedule, bound, detail) -> SolveReport | None:
    for nu in schedule:
        if nu > bound:
            return SolveReport("no-solution-mod-nu", nu=nu, detail=detail)
    return None


def solve_in_R_infty(F, residue_solver: ResidueSolver | None = None,
                     nu_schedule: Sequence = (1, 2, 4, 8, 16), q_cap: int = 12) -> SolveReport:
    """Look for an exact solution of ``F = 0`` in ``R_q``, ``q <= q_cap``.

    One-variable equations are settled by a Newton-Puiseux search, whose
    exhaustion also certifies the least unsolvable congruence.  Larger
    systems lift residue solutions by Newton's method, retrying along
    one-variable sections when the Jacobian is degenerate.
    """
    F = PolySystem.of(F)
    schedule = [Fraction(v) for v in nu_schedule]
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] <= 0:
        raise ValueError("nu schedule must be a non-empty increasing list of positive rationals")
    working = schedule[-1]
    solver = residue_solver or default_residue_solver(F.field)

    if F.n_vars == 1:
        main = next((f for f in F if not f.is_zero()), None)
        if main is None:
            return _solved(F, (PuiseuxSeries.zero(F.field),), "every point is a solution")
        search = puiseux_roots(main, working, q_cap=q_cap)
        for root in sorted(search.roots, key=lambda r: r.q):
            pt = (root.value,)
            if F.residual_val(pt) >= working:
                return _solved(F, pt, f"{root.kind} root of the Newton-Puiseux search")
        if search.complete and not search.roots:
            report = _negative(schedule, search.max_residual,
                               f"val F(x) <= {search.max_residual} on all of R_infty")
            if report:
                return report
        return SolveReport("inconclusive", detail="congruences solvable in the schedule but no lift found")

    residues = solver(residue_system(F), F.n_vars)
    if not residues.points:
        if residues.complete:
            return SolveReport("no-solution-mod-nu", nu=schedule[0],
                               detail="the reduced system has no solution in the residue field")
        return SolveReport("inconclusive", detail="no residue solution within the search box")
    field = F.field
    for xbar in residues.points:
        start = [PuiseuxSeries.constant(field, c) for c in xbar]
        try:
            return _solved(F, smooth_lift(F, start, working), "Newton lift of a residue solution")
        except (NotSmoothEnough, PrecisionExhausted):
            pass
    for xbar in residues.points:
        start = [PuiseuxSeries.constant(field, c) for c in xbar]
        for i in range(F.n_vars):
            for f in F:
                section = f.substitute({j: start[j] for j in range(F.n_vars) if j != i})
                section = _only_variable(section, i)
                if section is None or section.is_zero():
                    continue
                for root in puiseux_roots(section, working, q_cap=q_cap).roots:
                    pt = list(start)
                    pt[i] = root.value
                    if F.residual_val(pt) >= working:
                        return _solved(F, pt, f"root of a section in variable {i}")
                    try:
                        return _solved(F, smooth_lift(F, pt, working), f"lift from a section in variable {i}")
                    except (NotSmoothEnough, PrecisionExhausted):
                        continue
    return SolveReport("inconclusive", detail="no residue solution lifted within the ramification cap")


def _only_variable(poly, i):
    from ..poly import SeriesPoly
    terms = {}
    for e, c in poly.items():
        if any(k for j, k in enumerate(e) if j != i):
            return None
        terms[(e[i],)] = c
    return SeriesPoly(poly.field, 1, terms)
