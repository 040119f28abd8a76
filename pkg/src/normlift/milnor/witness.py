"""Explicit norm decompositions of mod-d symbols.

Given unit classes ``u_1..u_j`` and pairwise distinct coefficient classes
``c_0..c_n`` in ``V = (Z/d)^(m+1)``, let ``W`` be the span of the ``u_s`` and
``W'`` the span of the differences ``c_a - c_b``.  A relation
``sum delta_s u_s = sum eps_ab (c_a - c_b)`` with some ``delta_s0 != 0``
rewrites ``delta_s0 {u_1..u_j}`` as ``sum eps_ab {u_1.., c_a/c_b, ..u_j}``
(slot ``s0`` replaced), and each summand is the norm of
``{u_1.., pi_ab, ..u_j}`` from ``L(pi_ab)``, ``pi_ab^d = c_a / c_b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from ..errors import DimensionMismatch, DuplicateCoefficientClass, Infeasible, TrivialExtension
from .kummer import KummerExtension, base_space, kummer_norm_class
from .linalg import nullspace, rank, transpose
from .model import UnitClassModD, WedgeClass, wedge


@dataclass(frozen=True)
class NormFactor:
    pair: tuple
    radicand: UnitClassModD
    element: WedgeClass  # symbol over the extension's generators
    exponent: int

    @property
    def extension(self) -> KummerExtension:
        return KummerExtension(base_space(self.radicand.d, self.radicand.m), self.radicand)

    def to_json(self) -> dict:
        return {"pair": list(self.pair), "exponent": self.exponent,
                "extension": self.extension.describe(),
                "element": self.element.to_json()}


@dataclass(frozen=True)
class NormDecomposition:
    target: WedgeClass
    factors: tuple
    case_tag: str                 # dependent | independent
    delta: int = 1                # coefficient of the target in the identity
    slot: int | None = None
    relation: tuple = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {"case": self.case_tag, "delta": self.delta, "slot": self.slot,
                "target": self.target.to_json(), "factors": [f.to_json() for f in self.factors]}


def _check_inputs(d, m_plus_1, u_classes, c_classes):
    for v in list(u_classes) + list(c_classes):
        if v.d != d or v.m != m_plus_1:
            raise DimensionMismatch("classes must live in (Z/d)^(m+1)")
    seen = set()
    for c in c_classes:
        if c.vec in seen:
            raise DuplicateCoefficientClass(f"class {list(c.vec)} repeats")
        seen.add(c.vec)


def norm_witness(d: int, m_plus_1: int, u_classes: Sequence[UnitClassModD],
                 c_classes: Sequence[UnitClassModD]) -> NormDecomposition:
    """Decompose ``{u_1, ..., u_j}`` into norms from ``L(root(c_a/c_b))``."""
    u_classes, c_classes = list(u_classes), list(c_classes)
    if not u_classes:
        raise DimensionMismatch("need at least one unit class")
    _check_inputs(d, m_plus_1, u_classes, c_classes)
    target = wedge(u_classes)
    j = len(u_classes)
    if rank([u.vec for u in u_classes], d) < j:
        return NormDecomposition(target, (), "dependent")
    pairs = list(combinations(range(len(c_classes)), 2))
    gens = [c_classes[a] - c_classes[b] for a, b in pairs]
    # columns: u_1..u_j then -g_ab; a kernel vector is (delta, eps)
    cols = [list(u.vec) for u in u_classes] + [list((-g).vec) for g in gens]
    kernel = nullspace(transpose(cols), d, len(cols)) if cols else []
    chosen = next((v for v in kernel if any(v[:j])), None)
    if chosen is None:
        raise Infeasible("the spans of the unit classes and of the coefficient differences meet only in 0")
    delta, eps = chosen[:j], chosen[j:]
    s0 = next(s for s in range(j) if delta[s])
    factors = []
    for (a, b), g, e in zip(pairs, gens, eps):
        if not e:
            continue
        if g.is_zero():
            raise TrivialExtension("equal coefficient classes")
        L = KummerExtension(base_space(d, m_plus_1), g)
        pi = L.pi_class()
        element = wedge([pi if s == s0 else u.extend([0]) for s, u in enumerate(u_classes)])
        factors.append(NormFactor((a, b), g, element, e))
    return NormDecomposition(target, tuple(factors), "independent", delta[s0], s0, tuple(chosen))


def expand_and_verify(dec: NormDecomposition) -> bool:
    """Push every factor through its norm and compare with
    ``delta * target``; ``delta`` must be invertible mod d."""
    d = dec.target.d
    if dec.delta % d == 0:
        return False
    total = WedgeClass.zero(d, dec.target.m, dec.target.j)
    for f in dec.factors:
        try:
            total = total + kummer_norm_class(f.extension, f.element).scale(f.exponent)
        except (TrivialExtension, DimensionMismatch):
            return False
    return total == dec.target.scale(dec.delta)
