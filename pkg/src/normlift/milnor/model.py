"""Unit classes and symbols modulo d over iterated Laurent fields.

Over ``k((t_1))...((t_m))`` with ``k`` algebraically closed of
characteristic 0, constants and principal units are d-th powers, so
``K^x / K^x^d`` is the lattice of valuation vectors modulo ``d``.  Since
``-1`` is a d-th power the symbol ``{x, x} = {x, -1}`` vanishes, and mod-d
symbols of length ``j`` live in the ``j``-th exterior power of that lattice.
Symbol coordinates are indexed by sorted 0-based index tuples.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from ..errors import DimensionMismatch


def _is_prime(d: int) -> bool:
    return d >= 2 and all(d % k for k in range(2, int(d ** 0.5) + 1))


@dataclass(frozen=True)
class IteratedLaurentField:
    m: int
    names: tuple = ()

    def __post_init__(self):
        names = tuple(self.names) or (("t",) if self.m == 1 else tuple(f"t{i + 1}" for i in range(self.m)))
        if len(names) != self.m or len(set(names)) != self.m:
            raise ValueError("need m distinct uniformizer names")
        object.__setattr__(self, "names", names)


@dataclass(frozen=True)
class MonomialElem:
    """``c * prod t_i^exps[i] * u`` with ``u`` a principal unit."""

    exps: tuple
    principal_unit: bool = True
    constant_tag: str = "1"

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(a) for a in self.exps))

    def __mul__(self, other: MonomialElem) -> MonomialElem:
        if len(self.exps) != len(other.exps):
            raise DimensionMismatch("monomials over different fields")
        return MonomialElem(tuple(a + b for a, b in zip(self.exps, other.exps)),
                            self.principal_unit and other.principal_unit,
                            f"{self.constant_tag}*{other.constant_tag}")


@dataclass(frozen=True)
class UnitClassModD:
    d: int
    vec: tuple

    def __post_init__(self):
        if not _is_prime(self.d):
            raise ValueError(f"d={self.d} is not prime")
        object.__setattr__(self, "vec", tuple(int(a) % self.d for a in self.vec))

    @property
    def m(self) -> int:
        return len(self.vec)

    def _check(self, other):
        if self.d != other.d or self.m != other.m:
            raise DimensionMismatch("classes over different lattices")

    def __add__(self, other: UnitClassModD) -> UnitClassModD:
        self._check(other)
        return UnitClassModD(self.d, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other: UnitClassModD) -> UnitClassModD:
        self._check(other)
        return UnitClassModD(self.d, tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __neg__(self):
        return UnitClassModD(self.d, tuple(-a for a in self.vec))

    def scale(self, k: int) -> UnitClassModD:
        return UnitClassModD(self.d, tuple(k * a for a in self.vec))

    def is_zero(self) -> bool:
        return not any(self.vec)

    def extend(self, extra: Sequence[int]) -> UnitClassModD:
        return UnitClassModD(self.d, self.vec + tuple(extra))


def unit_class(e: MonomialElem, d: int, m: int | None = None) -> UnitClassModD:
    """Class modulo d-th powers; constants and principal units are trivial."""
    if m is not None and len(e.exps) != m:
        raise DimensionMismatch(f"{len(e.exps)} exponents for {m} uniformizers")
    return UnitClassModD(d, e.exps)


@dataclass(frozen=True)
class WedgeClass:
    d: int
    m: int
    j: int
    coords: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, a in dict(self.coords).items():
            idx = tuple(idx)
            if len(idx) != self.j or list(idx) != sorted(set(idx)) or any(not 0 <= i < self.m for i in idx):
                raise ValueError(f"bad index set {idx} for a degree-{self.j} class on {self.m} generators")
            a %= self.d
            if a:
                clean[idx] = a
        object.__setattr__(self, "coords", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, d, m, j) -> WedgeClass:
        return cls(d, m, j, {})

    @classmethod
    def basis(cls, d, m, idx) -> WedgeClass:
        return cls(d, m, len(idx), {tuple(idx): 1})

    def _check(self, other):
        if (self.d, self.m, self.j) != (other.d, other.m, other.j):
            raise DimensionMismatch("symbols of different shapes")

    def __add__(self, other: WedgeClass) -> WedgeClass:
        self._check(other)
        acc = dict(self.coords)
        for k, v in other.coords.items():
            acc[k] = acc.get(k, 0) + v
        return WedgeClass(self.d, self.m, self.j, acc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> WedgeClass:
        return WedgeClass(self.d, self.m, self.j, {i: k * a for i, a in self.coords.items()})

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        if not isinstance(other, WedgeClass):
            return NotImplemented
        return (self.d, self.m, self.j, self.coords) == (other.d, other.m, other.j, other.coords)

    def __hash__(self):
        return hash((self.d, self.m, self.j, tuple(self.coords.items())))

    def __xor__(self, other: WedgeClass) -> WedgeClass:
        """Exterior product."""
        if (self.d, self.m) != (other.d, other.m):
            raise DimensionMismatch("symbols over different lattices")
        acc: dict = {}
        for I, a in self.coords.items():
            for J, b in other.coords.items():
                if set(I) & set(J):
                    continue
                seq = I + J
                sign = _perm_sign(seq)
                key = tuple(sorted(seq))
                acc[key] = acc.get(key, 0) + sign * a * b
        return WedgeClass(self.d, self.m, self.j + other.j, acc)

    def embed(self, m_new: int) -> WedgeClass:
        """Same symbol with extra generators appended."""
        if m_new < self.m:
            raise DimensionMismatch("cannot drop generators")
        return WedgeClass(self.d, m_new, self.j, self.coords)

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "j": self.j,
                "coords": [[list(k), v] for k, v in self.coords.items()]}


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for k in range(i + 1, len(seq)):
            if seq[i] > seq[k]:
                sign = -sign
    return sign


def _det_mod(M, d):
    n = len(M)
    if n == 0:
        return 1
    A = [[x % d for x in r] for r in M]
    det = 1
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c] % d
        inv = pow(A[c][c], -1, d)
        for i in range(c + 1, n):
            f = A[i][c] * inv % d
            if f:
                A[i] = [(a - f * b) % d for a, b in zip(A[i], A[c])]
    return det % d


def wedge(vs: Sequence[UnitClassModD], m: int | None = None, d: int | None = None) -> WedgeClass:
    """``v_1 ^ ... ^ v_j``: the coordinate on ``I`` is the ``I``-minor of
    the matrix with rows ``v_s``."""
    vs = list(vs)
    if not vs:
        if m is None or d is None:
            raise DimensionMismatch("empty wedge needs explicit m and d")
        return WedgeClass(d, m, 0, {(): 1})
    d0, m0 = vs[0].d, vs[0].m
    if any(v.d != d0 or v.m != m0 for v in vs):
        raise DimensionMismatch("wedge factors over different lattices")
    j = len(vs)
    coords = {}
    for I in combinations(range(m0), j):
        coords[I] = _det_mod([[v.vec[i] for i in I] for v in vs], d0)
    return WedgeClass(d0, m0, j, coords)

