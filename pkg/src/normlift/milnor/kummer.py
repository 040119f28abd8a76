"""Kummer extensions and their norms on mod-d symbols.

A class space is a lattice ``(Z/d)^g`` of generator classes modulo linear
relations.  Adjoining ``pi`` with ``pi^d = u`` appends one generator and the
relation ``u = 0``.  Symbols restricted from the base have norm ``d`` times
themselves, hence zero mod d; by the projection formula a symbol
``B ^ pi`` has norm ``B ^ N(pi) = B ^ u`` (the sign ``(-1)^(d-1)`` is a
d-th power in the model).
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionMismatch, TrivialExtension
from .linalg import rref
from .model import UnitClassModD, WedgeClass, wedge


@dataclass(frozen=True)
class ClassSpace:
    d: int
    n_gens: int
    relations: tuple = ()

    def __post_init__(self):
        rels = tuple(tuple(int(a) % self.d for a in r) for r in self.relations)
        if any(len(r) != self.n_gens for r in rels):
            raise DimensionMismatch("relation length differs from the generator count")
        object.__setattr__(self, "relations", rels)

    @property
    def dim(self) -> int:
        return self.n_gens - len(self._reduced()[1])

    def _reduced(self):
        if not self.relations:
            return [], []
        return rref(self.relations, self.d)

    def _generator_images(self):
        R, pivots = self._reduced()
        free = [c for c in range(self.n_gens) if c not in pivots]
        images = []
        for i in range(self.n_gens):
            vec = [0] * len(free)
            if i in free:
                vec[free.index(i)] = 1
            else:
                row = R[pivots.index(i)]
                for pos, k in enumerate(free):
                    vec[pos] = -row[k]
            images.append(UnitClassModD(self.d, vec))
        return images

    def canonical(self, x) -> WedgeClass:
        """Image of a symbol in the exterior power of the quotient lattice."""
        if isinstance(x, UnitClassModD):
            x = wedge([x])
        if x.m != self.n_gens or x.d != self.d:
            raise DimensionMismatch("symbol does not live on this class space")
        images = self._generator_images()
        q = len(images[0].vec) if images else 0
        total = WedgeClass.zero(self.d, q, x.j)
        for I, a in x.coords.items():
            if not I:
                total = total + WedgeClass(self.d, q, 0, {(): a})
                continue
            total = total + wedge([images[i] for i in I]).scale(a)
        return total

    def equal(self, x, y) -> bool:
        return self.canonical(x) == self.canonical(y)

    def is_zero(self, x) -> bool:
        return self.canonical(x).is_zero()


def base_space(d: int, m: int) -> ClassSpace:
    return ClassSpace(d, m, ())


@dataclass(frozen=True)
class KummerExtension:
    """``L = K(pi)`` with ``pi^d = u``; ``pi`` is generator ``base.n_gens``."""

    base: ClassSpace
    u: UnitClassModD

    def __post_init__(self):
        if self.u.d != self.base.d or self.u.m != self.base.n_gens:
            raise DimensionMismatch("radicand does not live on the base")
        if self.base.is_zero(self.u):
            raise TrivialExtension("radicand is a d-th power: the extension is trivial")

    @classmethod
    def of(cls, d: int, base_dim: int, u, base_relations=()) -> KummerExtension:
        if not isinstance(u, UnitClassModD):
            u = UnitClassModD(d, u)
        return cls(ClassSpace(d, base_dim, tuple(base_relations)), u)

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def pi(self) -> int:
        return self.base.n_gens

    @property
    def space(self) -> ClassSpace:
        rels = tuple(r + (0,) for r in self.base.relations) + (self.u.vec + (0,),)
        return ClassSpace(self.d, self.base.n_gens + 1, rels)

    def restrict(self, x) -> WedgeClass:
        """A base symbol viewed in ``L``."""
        if isinstance(x, UnitClassModD):
            x = wedge([x])
        return x.embed(self.base.n_gens + 1)

    def pi_class(self) -> UnitClassModD:
        vec = [0] * (self.base.n_gens + 1)
        vec[self.pi] = 1
        return UnitClassModD(self.d, vec)

    def describe(self) -> str:
        return f"adjoin a root of X^{self.d} - u, u of class {list(self.u.vec)}"


def kummer_norm_class(L: KummerExtension, x) -> WedgeClass:
    """Norm from ``L`` to its base of a mod-d symbol over ``L``'s generators."""
    if isinstance(x, UnitClassModD):
        x = wedge([x])
    if x.d != L.d or x.m != L.base.n_gens + 1:
        raise DimensionMismatch("symbol does not live on the extension")
    m = L.base.n_gens
    if x.j == 0:
        return WedgeClass.zero(L.d, m, 0)
    B = {}
    for I, a in x.coords.items():
        if I[-1] == L.pi:
            B[I[:-1]] = a
    Bw = WedgeClass(L.d, m, x.j - 1, B)
    return Bw ^ wedge([L.u])
