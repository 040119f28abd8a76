"""Exact coefficient fields: the rationals and prime fields F_p."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .errors import ParseError

Q_KIND = "Q"
FP_KIND = "Fp"


@dataclass(frozen=True)
class FieldDescriptor:
    """Coefficient field.  Elements are ``Fraction`` over Q and ``int`` in
    ``range(p)`` over F_p; every operation goes through the descriptor so
    the two representations never mix."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == Q_KIND:
            if self.p is not None:
                raise ValueError("the rationals carry no modulus")
        elif self.kind == FP_KIND:
            if self.p is None or not isprime(self.p):
                raise ValueError(f"F_p needs a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldDescriptor:
        return cls(Q_KIND)

    @classmethod
    def prime(cls, p: int) -> FieldDescriptor:
        return cls(FP_KIND, p)

    @classmethod
    def parse(cls, text: str) -> FieldDescriptor:
        text = text.strip()
        if text == "Q":
            return cls.rationals()
        if text.startswith("Fp:"):
            try:
                return cls.prime(int(text[3:]))
            except ValueError as exc:
                raise ParseError(f"bad field {text!r}: {exc}") from None
        raise ParseError(f"bad field {text!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == FP_KIND

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == FP_KIND else 0

    def __str__(self):
        return "Q" if self.kind == Q_KIND else f"Fp:{self.p}"

    # element arithmetic ------------------------------------------------

    def __call__(self, value) -> Fraction | int:
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.kind == Q_KIND:
            return Fraction(value)
        value = Fraction(value)
        num = value.numerator % self.p
        den = value.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"{value} has no image in F_{self.p}")
        return num * pow(den, -1, self.p) % self.p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if self.p is None:
            return Fraction(a) ** k
        if k < 0:
            return pow(self.inv(a), -k, self.p)
        return pow(a, k, self.p)

    def elements(self):
        """All elements of a finite field in the order 0, 1, ..., p-1."""
        if self.p is None:
            raise ValueError("the rationals are not enumerable here")
        return range(self.p)

    def format(self, a) -> str:
        if self.p is None:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a % self.p)


QQ = FieldDescriptor.rationals()


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor.prime(p)
