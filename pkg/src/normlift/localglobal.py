"""Norm groups of conics over the rationals, locally and globally.

For a smooth conic ``C: z^2 = a x^2 + b y^2`` the subgroup of ``Q^x``
generated by norms from fields where ``C`` has a point is all of ``Q_p^x``
at every finite place.  At the real place it is everything when ``C`` has a
real point and the positive reals otherwise.  Membership is local
everywhere, so only the sign can obstruct.  Witnesses are products of
norms from quadratic fields ``Q(sqrt d)`` splitting ``C``; each norm claim
is checked with Hilbert symbols, relying on the Hasse norm theorem.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .errors import NotFoundWithinBound, RefusedNonMember


@dataclass(frozen=True, order=True)
class Place:
    p: int  # 0 encodes the real place

    @classmethod
    def real(cls) -> Place:
        return cls(0)

    @classmethod
    def finite(cls, p: int) -> Place:
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> Place:
        text = str(text).strip().lower()
        return cls.real() if text in ("real", "inf", "oo") else cls.finite(int(text))

    @property
    def is_real(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "real" if self.is_real else str(self.p)


REAL = Place.real()


@dataclass(frozen=True)
class Conic:
    """``z^2 = a x^2 + b y^2``."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        if a == 0 or b == 0:
            raise ValueError("conic coefficients must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def bad_places(self) -> list[Place]:
        """Places where the conic has no local point."""
        return [v for v in relevant_places(self.a, self.b) if hilbert_symbol(self.a, self.b, v) == -1]

    def has_real_points(self) -> bool:
        return hilbert_symbol(self.a, self.b, REAL) == 1


@dataclass(frozen=True)
class NormWitness:
    x: Fraction
    factors: tuple  # ((d, y), ...)

    def to_json(self) -> dict:
        return {"x": str(self.x), "factors": [{"d": d, "y": str(y)} for d, y in self.factors]}


# ---------------------------------------------------------------------------
# arithmetic helpers


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple:
    return tuple(sorted(sympy.factorint(abs(n)).items())) if abs(n) > 1 else ()


def _int_class(x) -> int:
    """An integer in the square class of the rational ``x``."""
    x = Fraction(x)
    return x.numerator * x.denominator


def squarefree_part(x) -> int:
    n = _int_class(x)
    s = -1 if n < 0 else 1
    for p, e in _factor(n):
        if e % 2:
            s *= p
    return s


def _split_p(n: int, p: int):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def _legendre(u: int, p: int) -> int:
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def hilbert_symbol(a, b, v: Place) -> int:
    """Local Hilbert symbol ``(a, b)_v`` by the explicit formulas."""
    a, b = _int_class(a), _int_class(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    if v.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = v.p
    alpha, u = _split_p(a, p)
    beta, w = _split_p(b, p)
    if p != 2:
        sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
        if beta % 2:
            sign *= _legendre(u, p)
        if alpha % 2:
            sign *= _legendre(w, p)
        return sign

    def eps(n):
        return ((n - 1) // 2) % 2

    def omega(n):
        return ((n * n - 1) // 8) % 2

    e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return -1 if e % 2 else 1


def relevant_places(*xs) -> list[Place]:
    """Real place and the primes dividing 2 and the given rationals."""
    primes = {2}
    for x in xs:
        for p, _ in _factor(_int_class(x)):
            primes.add(p)
    return [REAL] + [Place(p) for p in sorted(primes)]


def is_local_square(d, v: Place) -> bool:
    n = _int_class(d)
    if v.is_real:
        return n > 0
    k, u = _split_p(n, v.p)
    if k % 2:
        return False
    if v.p == 2:
        return u % 8 == 1
    return _legendre(u, v.p) == 1


def field_splits_conic(d: int, C: Conic) -> bool:
    """``Q(sqrt d)`` splits ``C`` iff no bad place of ``C`` splits in it."""
    if d == 1 or squarefree_part(d) != d:
        raise ValueError(f"{d} is not a squarefree integer other than 1")
    return all(not is_local_square(d, v) for v in C.bad_places())


def is_norm_from(y, d: int) -> bool:
    """Whether ``y`` is a norm from ``Q(sqrt d)`` (Hasse norm theorem)."""
    return all(hilbert_symbol(y, d, v) == 1 for v in relevant_places(y, d))


# ---------------------------------------------------------------------------
# the decision procedure


def conic_local_solvable(C: Conic, v: Place) -> bool:
    return hilbert_symbol(C.a, C.b, v) == 1


def local_norm_membership(x, C: Conic, v: Place) -> bool:
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero is not in the multiplicative group")
    if not v.is_real:
        return True
    return conic_local_solvable(C, v) or x > 0


def local_obstructions(x, C: Conic) -> list[Place]:
    """Places where ``x`` fails to be a local member; only the real place
    can appear."""
    return [v for v in relevant_places(x, C.a, C.b) if not local_norm_membership(x, C, v)]


def global_membership_decide(x, C: Conic) -> bool:
    return not local_obstructions(x, C)


# ---------------------------------------------------------------------------
# witnesses


def squarefree_candidates(bound: int) -> list[int]:
    """Squarefree ``d != 1`` with ``|d| <= bound``, by absolute value then
    sign (negative first)."""
    out = []
    for n in range(1, bound + 1):
        if squarefree_part(n) != n:
            continue
        out.append(-n)
        if n != 1:
            out.append(n)
    return out


@lru_cache(maxsize=None)
def _splitting_fields(a_cls: int, b_cls: int, bound: int) -> tuple:
    C = Conic(a_cls, b_cls)
    return tuple(d for d in squarefree_candidates(bound) if field_splits_conic(d, C))


@lru_cache(maxsize=None)
def _single(s: int, a_cls: int, b_cls: int, bound: int):
    for d in _splitting_fields(a_cls, b_cls, bound):
        if is_norm_from(s, d):
            return d
    return None


@lru_cache(maxsize=None)
def _class_witness(s: int, a_cls: int, b_cls: int, bound: int):
    """Factors for the squarefree representative ``s``, or ``None``."""
    d = _single(s, a_cls, b_cls, bound)
    if d is not None:
        return ((d, Fraction(s)),)
    fields = _splitting_fields(a_cls, b_cls, bound)
    for y1 in squarefree_candidates(bound) + [1]:
        y2 = squarefree_part(Fraction(s, y1))
        d2 = _single(y2, a_cls, b_cls, bound)
        if d2 is None:
            continue
        for d1 in fields:
            if is_norm_from(y1, d1):
                return ((d1, Fraction(y1)), (d2, Fraction(s, y1)))
    return None


def witness_search(x, C: Conic, bound: int = 50, force: bool = False) -> NormWitness:
    """Express ``x`` as a product of at most two norms from quadratic fields
    splitting ``C``, with discriminant and factor classes bounded by ``bound``."""
    x = Fraction(x)
    if not force and not global_membership_decide(x, C):
        raise RefusedNonMember(f"{x} fails the local test at the real place")
    s = squarefree_part(x)
    factors = _class_witness(s, squarefree_part(C.a), squarefree_part(C.b), int(bound))
    if factors is None:
        raise NotFoundWithinBound(f"no witness for {x} with discriminants up to {bound}")
    # x = s * r^2 and r^2 is a norm from every field, so it rides on the first factor
    scale = x / s
    (d1, y1), *rest = factors
    return NormWitness(x, ((d1, y1 * scale),) + tuple(rest))


def verify_witness(w: NormWitness, C: Conic) -> bool:
    product = Fraction(1)
    for d, y in w.factors:
        y = Fraction(y)
        if y == 0:
            return False
        try:
            if not field_splits_conic(int(d), C):
                return False
        except ValueError:
            return False
        if not is_norm_from(y, int(d)):
            return False
        product *= y
    return product == Fraction(w.x)


def witness_from_pairs(x, pairs: Sequence) -> NormWitness:
    return NormWitness(Fraction(x), tuple((int(d), Fraction(y)) for d, y in pairs))
