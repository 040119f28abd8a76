"""Newton-Puiseux search for the roots of one-variable polynomials.

The search walks a disc ``X = prefix + t^lam * Y`` (``val Y >= 0``, or ``> 0``
below a repeated residue root).  Each Newton polygon segment of slope ``-rho``
contributes a residue polynomial; a simple residue root is Hensel-certified
by lifting in scaled coordinates, a repeated one opens a deeper disc.  When
the search finishes without open branches and finds no root, the largest
residual seen bounds ``val f(x)`` over the whole disc, which is a certificate
that ``f(x) = 0 mod t^nu`` has no solution for any larger ``nu``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import NotSmoothEnough, PrecisionExhausted, PrecisionTooLow
from ..poly import SeriesPoly, newton_polygon
from ..series import INF, PuiseuxSeries
from .newton import smooth_lift
from .residue import univariate_roots


@dataclass(frozen=True)
class PuiseuxRoot:
    """``value`` is exact; ``val f(value) >= precision`` (inf for a true root)."""

    value: PuiseuxSeries
    precision: Fraction | float
    kind: str  # "exact" or "simple"

    @property
    def q(self) -> int:
        return self.value.normalized().q


@dataclass
class RootSearch:
    roots: list = field(default_factory=list)
    open_branches: list = field(default_factory=list)  # (prefix, reason)
    max_residual: Fraction | float = -INF

    @property
    def complete(self) -> bool:
        return not self.open_branches


def _key(s: PuiseuxSeries):
    return tuple(s.normalized().items())


def _within(exp: Fraction, q: int | None) -> bool:
    return q is None or (exp * q).denominator == 1


def puiseux_roots(f: SeriesPoly, precision, *, center=None, radius=0, ring_q: int | None = None,
                  q_cap: int | None = None, depth_cap: int = 12) -> RootSearch:
    """Roots of ``f`` in the disc ``{x : val(x - center) >= radius}``.

    ``ring_q`` restricts to roots in ``R_q`` (exponents in ``(1/q)Z``); a
    branch that needs a finer index is then definitively dead.  ``q_cap``
    instead leaves such branches open.  Simple roots are lifted until
    ``val f >= precision``.
    """
    if f.n_vars != 1:
        raise ValueError("puiseux_roots expects a one-variable polynomial")
    F = f.field
    center = PuiseuxSeries.zero(F) if center is None else center.as_exact()
    radius = Fraction(radius)
    target = Fraction(precision)
    out = RootSearch()
    if f.is_zero():
        raise ValueError("every point is a root of the zero polynomial")
    G = f.affine_substitute(0, center, radius)
    seen: set = set()

    def record(value: PuiseuxSeries, prec, kind):
        value = value.normalized()
        if kind == "simple" and f(value).is_exact_zero():
            kind, prec = "exact", INF
        k = _key(value)
        if k not in seen:
            seen.add(k)
            out.roots.append(PuiseuxRoot(value, prec, kind))

    def stage(G: SeriesPoly, mu, prefix: PuiseuxSeries, lam: Fraction, strict: bool, depth: int):
        coeffs = G.univariate_coefficients(0)
        while coeffs and coeffs[0].is_exact_zero():
            # Y = 0 is a root of the current reduced polynomial
            record(prefix, INF, "exact")
            coeffs = coeffs[1:]
        if not coeffs:
            return
        if coeffs[0].is_zero():
            out.open_branches.append((prefix, "constant term known only to its precision"))
            return
        out.max_residual = max(out.max_residual, mu + coeffs[0].val_bound())
        if len(coeffs) == 1:
            return
        try:
            poly = newton_polygon(coeffs)
        except PrecisionTooLow as exc:
            out.open_branches.append((prefix, str(exc)))
            return
        G = SeriesPoly(F, 1, {(i,): c for i, c in enumerate(coeffs)}, G.names)
        for slope, i0, i1 in poly.segments():
            rho = -slope
            if rho < 0 or (strict and rho == 0):
                continue
            exp = lam + rho
            if not _within(exp, ring_q):
                continue
            q_needed = math.lcm(prefix.normalized().q, exp.denominator)
            if q_cap is not None and q_needed > q_cap:
                out.open_branches.append((prefix, f"needs ramification {q_needed} > cap {q_cap}"))
                continue
            kappa = coeffs[i0].val() + i0 * rho
            phi = [F.zero()] * (i1 - i0 + 1)
            for i in range(i0, i1 + 1):
                c = coeffs[i]
                if not c.is_zero():
                    phi[i - i0] = c.coeff(kappa - i * rho)
            for c, mult in univariate_roots(phi, F):
                if c == 0:
                    continue
                branch_prefix = prefix + PuiseuxSeries.monomial(F, c, exp)
                if mult == 1:
                    H = G.affine_substitute(0, 0, rho).shift_t(-kappa)
                    goal = target - mu - kappa
                    start = PuiseuxSeries.constant(F, c)
                    try:
                        (w,) = smooth_lift([H], [start], max(goal, Fraction(1)), minor=((0,), (0,)))
                    except (NotSmoothEnough, PrecisionExhausted) as exc:
                        out.open_branches.append((branch_prefix, str(exc)))
                        continue
                    value = prefix + w.shift(exp)
                    if q_cap is not None and value.normalized().q > q_cap:
                        out.open_branches.append((branch_prefix, "lifted root exceeds the ramification cap"))
                        continue
                    record(value, target, "simple")
                elif depth >= depth_cap:
                    out.open_branches.append((branch_prefix, "repeated residue roots beyond the depth cap"))
                else:
                    shift = PuiseuxSeries.monomial(F, c, rho)
                    G1 = G.affine_substitute(0, shift, rho).shift_t(-kappa)
                    stage(G1, mu + kappa, branch_prefix, exp, True, depth + 1)

    stage(G, Fraction(0), center, radius, False, 0)
    return out
