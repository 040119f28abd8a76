"""Truncated Puiseux series over an exact coefficient field.

A series is ``sum c_k t^(k/q)`` known modulo ``t^prec``.  Exponents are
stored as integer numerators over an explicit ramification index ``q``, so
membership in ``k[[t^(1/q)]]`` is a stored fact rather than something
recovered from reduced fractions.  ``prec`` is a ``Fraction`` or
``math.inf`` for an exactly known element.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import FieldMismatch, InsufficientPrecision, NotAMultiple, ZeroSeries
from .fields import FieldDescriptor

INF = math.inf


def as_precision(value) -> Fraction | float:
    if value is None or value == INF:
        return INF
    if isinstance(value, str):
        if value.strip() in ("inf", "oo"):
            return INF
        return Fraction(value.strip())
    return Fraction(value)


def format_rational(r) -> str:
    if r == INF:
        return "inf"
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class InfVal:
    """Valuation marker for a series with no visible term.

    ``precision`` is the bound the series is known to vanish to; it is
    ``inf`` only for an exact zero.
    """

    precision: Fraction | float

    @property
    def exact(self) -> bool:
        return self.precision == INF

    def __repr__(self):
        return "InfVal(exact)" if self.exact else f"InfVal(mod t^{self.precision})"


class PuiseuxSeries:
    __slots__ = ("field", "q", "_terms", "prec")

    def __init__(self, field: FieldDescriptor, q: int, terms: Mapping[int, object] | Iterable = (),
                 prec=INF):
        if q < 1:
            raise ValueError("ramification index must be positive")
        prec = as_precision(prec)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for k, c in items:
            k = int(k)
            if Fraction(k, q) >= prec:
                continue
            c = field(c)
            if k in clean:
                c = field.add(clean[k], c)
            clean[k] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_terms", tuple(sorted((k, c) for k, c in clean.items() if c != 0)))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # construction ------------------------------------------------------

    @classmethod
    def zero(cls, field, prec=INF) -> PuiseuxSeries:
        return cls(field, 1, (), prec)

    @classmethod
    def constant(cls, field, c, prec=INF) -> PuiseuxSeries:
        return cls(field, 1, {0: c}, prec)

    @classmethod
    def monomial(cls, field, coeff, exponent, prec=INF) -> PuiseuxSeries:
        exponent = Fraction(exponent)
        return cls(field, exponent.denominator, {exponent.numerator: coeff}, prec)

    @classmethod
    def gen(cls, field) -> PuiseuxSeries:
        """The uniformizer t."""
        return cls.monomial(field, 1, 1)

    @classmethod
    def from_exponents(cls, field, terms: Mapping, prec=INF) -> PuiseuxSeries:
        """Build from ``{rational exponent: coefficient}``."""
        exps = [Fraction(e) for e in terms]
        q = math.lcm(1, *(e.denominator for e in exps))
        return cls(field, q, {int(Fraction(e) * q): c for e, c in terms.items()}, prec)

    # inspection --------------------------------------------------------

    @property
    def terms(self) -> tuple:
        """Sorted ``(numerator, coefficient)`` pairs."""
        return self._terms

    def items(self):
        """Yield ``(exponent, coefficient)`` with exponents as Fractions."""
        for k, c in self._terms:
            yield Fraction(k, self.q), c

    def coeff(self, exponent) -> object:
        exponent = Fraction(exponent)
        if (exponent * self.q).denominator != 1:
            return self.field.zero()
        k = int(exponent * self.q)
        for kk, c in self._terms:
            if kk == k:
                return c
        return self.field.zero()

    @property
    def is_exact(self) -> bool:
        return self.prec == INF

    def is_zero(self) -> bool:
        """True when no term is visible (exact zero or zero-so-far)."""
        return not self._terms

    def is_exact_zero(self) -> bool:
        return not self._terms and self.prec == INF

    def val(self) -> Fraction | InfVal:
        if not self._terms:
            return InfVal(self.prec)
        return Fraction(self._terms[0][0], self.q)

    def val_bound(self) -> Fraction | float:
        """Certified lower bound for the valuation (the precision when no
        term is visible)."""
        if not self._terms:
            return self.prec
        return Fraction(self._terms[0][0], self.q)

    def leading_coeff(self):
        if not self._terms:
            raise ZeroSeries("zero series has no leading coefficient")
        return self._terms[0][1]

    def constant_term(self):
        return self.coeff(0)

    def min_exponent(self) -> Fraction | None:
        return Fraction(self._terms[0][0], self.q) if self._terms else None

    def max_exponent(self) -> Fraction | None:
        return Fraction(self._terms[-1][0], self.q) if self._terms else None

    # representation changes -------------------------------------------

    def reramify(self, q_new: int) -> PuiseuxSeries:
        if q_new % self.q:
            raise NotAMultiple(f"{q_new} is not a multiple of {self.q}")
        f = q_new // self.q
        return PuiseuxSeries(self.field, q_new, {k * f: c for k, c in self._terms}, self.prec)

    def normalized(self) -> PuiseuxSeries:
        """Same element with the smallest ramification index."""
        g = self.q
        for k, _ in self._terms:
            g = math.gcd(g, k)
        if g == 1:
            return self
        return PuiseuxSeries(self.field, self.q // g, {k // g: c for k, c in self._terms}, self.prec)

    def truncate(self, prec) -> PuiseuxSeries:
        prec = min(self.prec, as_precision(prec))
        return PuiseuxSeries(self.field, self.q, self._terms, prec)

    def as_exact(self) -> PuiseuxSeries:
        """The visible terms, read as an exact element."""
        return PuiseuxSeries(self.field, self.q, self._terms, INF)

    def shift(self, exponent) -> PuiseuxSeries:
        """Multiply by ``t^exponent`` exactly."""
        exponent = Fraction(exponent)
        q = math.lcm(self.q, exponent.denominator)
        s = self.reramify(q)
        k0 = int(exponent * q)
        return PuiseuxSeries(self.field, q, {k + k0: c for k, c in s._terms}, s.prec + exponent)

    def scale(self, c) -> PuiseuxSeries:
        c = self.field(c)
        if c == 0:
            return self._scale_zero()
        return PuiseuxSeries(self.field, self.q, {k: self.field.mul(v, c) for k, v in self._terms},
                             self.prec)

    def _scale_zero(self) -> PuiseuxSeries:
        return PuiseuxSeries.zero(self.field)

    def substitute_power(self, r) -> PuiseuxSeries:
        """The series in ``t^r`` (t -> t^r) for a positive rational r."""
        r = Fraction(r)
        if r <= 0:
            raise ValueError("substitution exponent must be positive")
        q = self.q * r.denominator
        return PuiseuxSeries(self.field, q, {k * r.numerator: c for k, c in self._terms},
                             self.prec * r)

    # arithmetic --------------------------------------------------------

    def _coerce(self, other) -> PuiseuxSeries:
        if isinstance(other, PuiseuxSeries):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return PuiseuxSeries.constant(self.field, other)
        return NotImplemented

    def _common(self, other):
        q = math.lcm(self.q, other.q)
        return q, self.reramify(q), other.reramify(q)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q, a, b = self._common(other)
        acc = dict(a._terms)
        F = self.field
        for k, c in b._terms:
            acc[k] = F.add(acc[k], c) if k in acc else c
        return PuiseuxSeries(F, q, acc, min(a.prec, b.prec))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.field, self.q, {k: self.field.neg(c) for k, c in self._terms},
                             self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q, a, b = self._common(other)
        prec = min(a.prec + b.val_bound(), b.prec + a.val_bound())
        F = self.field
        acc = {}
        for k1, c1 in a._terms:
            for k2, c2 in b._terms:
                k = k1 + k2
                if Fraction(k, q) >= prec:
                    break
                v = F.mul(c1, c2)
                acc[k] = F.add(acc[k], v) if k in acc else v
        return PuiseuxSeries(F, q, acc, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) == 1 and self.is_exact:
                (k, c), = self._terms
                return PuiseuxSeries(self.field, self.q, {k * n: self.field.pow(c, n)})
            raise ValueError("negative powers only for exact monomials; use invert_unit")
        result = PuiseuxSeries.constant(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def congruent(self, other, modulus) -> bool:
        """``self == other mod t^modulus``, certified from known terms."""
        return (self - other).val_bound() >= as_precision(modulus)

    # equality / display ------------------------------------------------

    def _key(self):
        n = self.normalized()
        return (self.field, n.q, n._terms, self.prec)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries.constant(self.field, other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PuiseuxSeries({self.field}, {self})"

    def __str__(self):
        F = self.field
        parts = []
        for e, c in self.items():
            cs = F.format(c)
            if e == 0:
                mono = cs
            else:
                pw = "t" if e == 1 else f"t^{e}" if e.denominator == 1 and e > 0 else f"t^({e})"
                mono = pw if cs == "1" else f"-{pw}" if cs == "-1" else f"{cs}*{pw}"
            parts.append(mono)
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if not self.is_exact:
            p = self.prec
            body += f" + O(t^{p})" if Fraction(p).denominator == 1 else f" + O(t^({p}))"
        return body

    # serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "q": self.q,
            "prec": format_rational(self.prec),
            "terms": [[k, self.field.format(c)] for k, c in self._terms],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> PuiseuxSeries:
        field = FieldDescriptor.parse(obj["field"])
        return cls(field, int(obj["q"]), [(int(k), field(c)) for k, c in obj["terms"]],
                   as_precision(obj.get("prec", "inf")))


def add(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    return a + b


def mul(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    return a * b


def val(a: PuiseuxSeries):
    return a.val()


def reramify(a: PuiseuxSeries, q_new: int) -> PuiseuxSeries:
    return a.reramify(q_new)


def invert_unit(a: PuiseuxSeries, target_precision) -> PuiseuxSeries:
    """Return ``r`` with ``a * r == 1 mod t^target_precision``.

    ``a`` need not be a unit of the valuation ring: ``t^v`` is factored out
    first, so the result has valuation ``-val(a)``.
    """
    target = as_precision(target_precision)
    if target == INF:
        raise InsufficientPrecision("an exact inverse needs a finite target")
    v = a.val()
    if isinstance(v, InfVal):
        raise ZeroSeries(f"cannot invert {a!r}")
    if a.prec - v < target:
        raise InsufficientPrecision(
            f"series known mod t^{a.prec} only gives its inverse to relative precision {a.prec - v}")
    F = a.field
    c_inv = F.inv(a.leading_coeff())
    u = a.shift(-v).scale(c_inv)
    q = u.q
    kmax = math.ceil(target * q)
    uk = dict(u.terms)
    b = [F.one()]
    for k in range(1, kmax):
        acc = F.zero()
        for i in range(1, k + 1):
            ui = uk.get(i)
            if ui is not None:
                acc = F.add(acc, F.mul(ui, b[k - i]))
        b.append(F.neg(acc))
    w = PuiseuxSeries(F, q, enumerate(b), target)
    return w.shift(-v).scale(c_inv)
