"""Polynomial systems over series rings and quantitative Newton lifting."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import (DimensionMismatch, FieldMismatch, InsufficientPrecision, NotSmoothEnough,
                      PrecisionExhausted, ZeroSeries)
from ..poly import SeriesPoly
from ..series import INF, InfVal, PuiseuxSeries, as_precision, invert_unit


@dataclass(frozen=True)
class PolySystem:
    polys: tuple

    def __post_init__(self):
        polys = tuple(self.polys)
        if not polys:
            raise ValueError("empty system")
        f0 = polys[0]
        for p in polys[1:]:
            if p.n_vars != f0.n_vars or p.field != f0.field:
                raise FieldMismatch("system entries must share variables and field")
        object.__setattr__(self, "polys", polys)

    @classmethod
    def of(cls, *polys) -> PolySystem:
        if len(polys) == 1 and isinstance(polys[0], PolySystem):
            return polys[0]
        if len(polys) == 1 and not isinstance(polys[0], SeriesPoly):
            polys = tuple(polys[0])
        return cls(tuple(polys))

    @property
    def field(self):
        return self.polys[0].field

    @property
    def n_vars(self) -> int:
        return self.polys[0].n_vars

    @property
    def r(self) -> int:
        return len(self.polys)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def evaluate(self, x) -> list[PuiseuxSeries]:
        return [f(*x) for f in self.polys]

    def residual_val(self, x):
        """Certified lower bound ``min_i val(F_i(x))``."""
        return min(v.val_bound() for v in self.evaluate(x))

    def jacobian(self) -> list[list[SeriesPoly]]:
        return [[f.partial(j) for j in range(self.n_vars)] for f in self.polys]

    def map(self, fn) -> PolySystem:
        return PolySystem(tuple(fn(f) for f in self.polys))

    def to_json(self) -> dict:
        return {"polys": [f.to_json() for f in self.polys]}

    @classmethod
    def from_json(cls, obj) -> PolySystem:
        return cls(tuple(SeriesPoly.from_json(p) for p in obj["polys"]))


@dataclass(frozen=True)
class ApproxSolution:
    """A point with a certified residual: ``val(F_i(point)) >= residual_val``."""

    point: tuple
    residual_val: Fraction | float

    @classmethod
    def of(cls, F: PolySystem, point) -> ApproxSolution:
        F = PolySystem.of(F)
        pt = tuple(_as_series(F.field, c) for c in point)
        if len(pt) != F.n_vars:
            raise DimensionMismatch(f"{len(pt)} coordinates for {F.n_vars} variables")
        return cls(pt, F.residual_val(pt))


def _as_series(field, c) -> PuiseuxSeries:
    return c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.constant(field, c)


def determinant(M: Sequence[Sequence[PuiseuxSeries]]) -> PuiseuxSeries:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = None
    for j in range(n):
        sub = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def adjugate(M):
    n = len(M)
    if n == 1:
        return [[PuiseuxSeries.constant(M[0][0].field, 1)]]
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            c = determinant(sub)
            adj[j][i] = -c if (i + j) % 2 else c
    return adj


def _minor_matrix(J, x, rows, cols):
    return [[J[i][j](*x) for j in cols] for i in rows]


def jacobian_residual(F, x, minor=None):
    """Valuation of a Jacobian minor at ``x`` (``InfVal`` when the minor
    vanishes to its known precision).

    ``minor`` is ``(rows, cols)``; by default the full square Jacobian.
    """
    F = PolySystem.of(F)
    x = tuple(_as_series(F.field, c) for c in x)
    rows, cols = _resolve_minor(F, minor)
    J = F.jacobian()
    return determinant(_minor_matrix(J, x, rows, cols)).val()


def _resolve_minor(F, minor):
    if minor is None:
        if F.r != F.n_vars:
            raise DimensionMismatch("non-square system: name the minor explicitly")
        return tuple(range(F.r)), tuple(range(F.n_vars))
    rows, cols = minor
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols) or not rows:
        raise DimensionMismatch("minor must be square and non-empty")
    if any(not 0 <= i < F.r for i in rows) or any(not 0 <= j < F.n_vars for j in cols):
        raise DimensionMismatch("minor index out of range")
    return rows, cols


def best_minor(F: PolySystem, x):
    """Minor of maximal size ``min(r, n)`` with the least valuation at
    ``x``; ties go to the lexicographically first index sets."""
    F = PolySystem.of(F)
    J = F.jacobian()
    k = min(F.r, F.n_vars)
    best = None
    for rows in combinations(range(F.r), k):
        for cols in combinations(range(F.n_vars), k):
            e = determinant(_minor_matrix(J, x, rows, cols)).val()
            key = INF if isinstance(e, InfVal) else e
            if best is None or key < best[0]:
                best = (key, rows, cols)
    return best[1], best[2]


def smooth_lift(F, x, target_precision, minor=None, max_steps: int = 64) -> tuple:
    """Newton-lift an approximate solution to ``val(F(y)) >= target``.

    Requires the residual ``nu`` of ``x`` and the minor valuation ``e`` to
    satisfy ``nu > 2e``; then ``y = x mod t^(nu - e)``.  Only the variables
    in the minor's columns move.  Iterates are exact elements of ``R_q``,
    so the final residual is certified by direct evaluation.
    """
    F = PolySystem.of(F)
    target = as_precision(target_precision)
    if target == INF:
        raise ValueError("target precision must be finite")
    point = x.point if isinstance(x, ApproxSolution) else x
    y = [_as_series(F.field, c).as_exact() for c in point]
    if len(y) != F.n_vars:
        raise DimensionMismatch(f"{len(y)} coordinates for {F.n_vars} variables")
    x0 = list(y)
    rows, cols = _resolve_minor(F, minor) if minor is not None else best_minor(F, y)
    J = F.jacobian()

    nu = F.residual_val(y)
    if nu >= target:
        return tuple(y)
    jm = _minor_matrix(J, y, rows, cols)
    e = determinant(jm).val()
    if isinstance(e, InfVal):
        raise NotSmoothEnough("Jacobian minor vanishes at the starting point")
    if nu <= 2 * e:
        raise NotSmoothEnough(f"residual {nu} does not exceed twice the minor valuation {e}")
    jmin = min(entry.val_bound() for row in jm for entry in row)
    width = target + max(0, -jmin)

    for _ in range(max_steps):
        values = F.evaluate(y)
        current = min(v.val_bound() for v in values)
        if current >= target:
            break
        if any(v.prec < target for v in values):
            raise PrecisionExhausted("system coefficients are not known to the target precision")
        jm = _minor_matrix(J, y, rows, cols)
        det = determinant(jm)
        try:
            inv = invert_unit(det, width + e)
        except (InsufficientPrecision, ZeroSeries) as exc:
            raise PrecisionExhausted(str(exc)) from None
        adj = adjugate(jm)
        res = [values[i] for i in rows]
        for a, j in enumerate(cols):
            acc = None
            for b in range(len(rows)):
                term = adj[a][b] * res[b]
                acc = term if acc is None else acc + term
            delta = (acc * inv).truncate(width).as_exact()
            y[j] = y[j] - delta
    else:
        raise PrecisionExhausted(f"no convergence to t^{target} in {max_steps} Newton steps")

    for j in cols:
        if not y[j].congruent(x0[j], nu - e):
            raise AssertionError("Newton step left the Hensel disc")  # a bug, not an input error
    return tuple(y)
