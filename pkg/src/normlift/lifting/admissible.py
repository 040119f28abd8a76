"""Constant calculus for Greenberg triples and admissible quadruples.

A triple ``(N, c, s)`` associated to level ``q`` promises: whenever
``F(x) = 0 mod t^(nu/q)`` with ``nu >= N`` and ``x`` in ``R_q``, there is an
exact root ``y`` in ``R_q`` with ``y = x mod t^(([nu/c] - s)/q)``.  A quadruple
``(q0, N, c, s)`` is admissible when ``(qN, c, qs)`` is associated to level
``q*q0`` for every ``q >= 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import EmptyDecomposition


@dataclass(frozen=True)
class AssociatedTriple:
    N: int
    c: int
    s: int
    q: int = 1

    def __post_init__(self):
        if self.N < 1 or self.c < 1 or self.s < 0 or self.q < 1:
            raise ValueError(f"malformed triple {self}")

    def proximity(self, nu: int) -> Fraction:
        """Exponent ``([nu/c] - s)/q`` the lifted root must agree to."""
        return Fraction(nu // self.c - self.s, self.q)


@dataclass(frozen=True)
class AdmissibleQuadruple:
    q0: int
    N: int
    c: int
    s: int

    def __post_init__(self):
        if self.q0 < 1 or self.N < 1 or self.c < 1 or self.s < 0:
            raise ValueError(f"malformed quadruple {self}")

    @classmethod
    def of(cls, data) -> AdmissibleQuadruple:
        if isinstance(data, AdmissibleQuadruple):
            return data
        return cls(*(int(v) for v in data))

    def triple_at(self, q: int) -> AssociatedTriple:
        """The triple ``(qN, c, qs)`` promised at level ``q*q0``."""
        if q < 1:
            raise ValueError("tower level must be positive")
        return AssociatedTriple(q * self.N, self.c, q * self.s, q * self.q0)

    def as_tuple(self) -> tuple:
        return (self.q0, self.N, self.c, self.s)


@dataclass(frozen=True)
class GreenbergConstants:
    """``(M, gamma, sigma)``: for ``mu >= M`` a solution mod ``t^mu`` in
    ``R_infty`` is within ``t^(mu/gamma - sigma)`` of an exact root."""

    M: Fraction
    gamma: int
    sigma: Fraction
    source: AdmissibleQuadruple = field(compare=False)


def _ceil_int(x) -> int:
    return math.ceil(Fraction(x))


def combine_admissible_smooth(minor: Sequence[int] | AdmissibleQuadruple,
                              per_subsystem: Sequence = ()) -> AdmissibleQuadruple:
    """Quadruple for an irreducible, radical, t-saturated system from the
    quadruple of its Jacobian-minor system and those of the excess
    components ``G_I`` (one per row subset ``I``)."""
    m = AdmissibleQuadruple.of(minor)
    parts = [AdmissibleQuadruple.of(p) for p in per_subsystem]
    q0 = m.q0 * math.prod(p.q0 for p in parts)
    n_ratio = max([Fraction(m.N, m.q0)] + [Fraction(p.N, p.q0) for p in parts])
    c_max = max([m.c] + [p.c for p in parts])
    s_ratio = max([Fraction(m.s, m.q0)] + [Fraction(p.s, p.q0) for p in parts])
    return AdmissibleQuadruple(q0, _ceil_int(2 + 2 * q0 * n_ratio), 2 * c_max,
                               _ceil_int(1 + q0 * s_ratio))


def combine_admissible_components(q0_prime: int, u: int, v: int, w: int,
                                  per_component: Sequence) -> AdmissibleQuadruple:
    """Quadruple for a general system from its geometric components.

    ``u`` is the number of components over ``K_{q0'}`` and ``v, w`` the
    exponents of the inclusion ``t^(uvw/q0') (I_1...I_u)^w in F``; these are
    certified by the caller.
    """
    comps = [AdmissibleQuadruple.of(p) for p in per_component]
    if not comps:
        raise EmptyDecomposition("no components supplied")
    if u != len(comps):
        raise ValueError(f"u={u} but {len(comps)} components supplied")
    if q0_prime < 1 or w < 1 or v < 0:
        raise ValueError("q0' and w must be positive, v non-negative")
    q0 = q0_prime * math.prod(p.q0 for p in comps)
    lift = Fraction(q0, q0_prime)
    n_ratio = max(Fraction(p.N, p.q0) for p in comps)
    s_ratio = max(Fraction(p.s, p.q0) for p in comps)
    N = u * w * lift * (n_ratio + v)
    s = 1 + lift * (v + s_ratio)
    return AdmissibleQuadruple(q0, _ceil_int(N), u * w * max(p.c for p in comps), _ceil_int(s))


def empty_variety_quadruple(val_u: int) -> AdmissibleQuadruple:
    """Quadruple ``(1, val(u)+1, 1, 0)`` for an inconsistent system, given
    the valuation of a nonzero constant ``u`` in the ideal."""
    return AdmissibleQuadruple(1, val_u + 1, 1, 0)


def greenberg_constants(quad) -> GreenbergConstants:
    quad = AdmissibleQuadruple.of(quad)
    return GreenbergConstants(Fraction(quad.N, quad.q0), quad.c,
                              Fraction(quad.s + 1, quad.q0), quad)
