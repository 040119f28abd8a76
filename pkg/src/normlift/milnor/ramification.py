"""Certificates that the constant term of an irreducible polynomial is not
a d-th power.

For a monic irreducible ``f`` of prime degree ``d`` over an iterated
Laurent field with vanishing ``X^(d-1)`` coefficient, ``f(0)`` is never a
d-th power.  The certificate computes the class of ``f(0)`` and records
which valuation drives the argument: the outermost one when it is nonzero,
otherwise a deeper one reached through the residue field.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from ..errors import ParseError, PreconditionViolated
from .model import IteratedLaurentField, MonomialElem, UnitClassModD, _is_prime, unit_class


@dataclass(frozen=True)
class LaurentPolynomial:
    """Monic-candidate ``sum coeffs[i] X^i`` with monomial coefficients
    (``None`` for zero)."""

    field: IteratedLaurentField
    coeffs: tuple

    @property
    def degree(self) -> int:
        return max(i for i, c in enumerate(self.coeffs) if c is not None)

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else None

    @classmethod
    def parse(cls, text: str, field: IteratedLaurentField, var: str = "X") -> LaurentPolynomial:
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
        terms: dict = {}
        for sign, node in _summands(tree.body, 1):
            const, exps, xdeg = _monomial(node, field, var)
            if xdeg in terms:
                raise ParseError(f"repeated power X^{xdeg}; combine the coefficient first")
            const *= sign
            if const == 0:
                continue
            terms[xdeg] = MonomialElem(exps, True, str(const))
        if not terms:
            raise ParseError("zero polynomial")
        deg = max(terms)
        return cls(field, tuple(terms.get(i) for i in range(deg + 1)))


def _summands(node, sign):
    if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub)):
        yield from _summands(node.left, sign)
        yield from _summands(node.right, sign if isinstance(node.op, ast.Add) else -sign)
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        yield from _summands(node.operand, -sign)
    else:
        yield sign, node


def _monomial(node, field, var):
    const = Fraction(1)
    exps = [0] * field.m
    xdeg = 0

    def visit(n, power=1):
        nonlocal const, xdeg
        if isinstance(n, ast.BinOp) and isinstance(n.op, ast.Mult):
            visit(n.left, power)
            visit(n.right, power)
        elif isinstance(n, ast.BinOp) and isinstance(n.op, ast.Pow):
            exp = n.right
            k = -exp.operand.value if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub) \
                and isinstance(exp.operand, ast.Constant) else getattr(exp, "value", None)
            if not isinstance(k, int):
                raise ParseError("exponents must be integers")
            visit(n.left, power * k)
        elif isinstance(n, ast.Constant) and isinstance(n.value, int):
            const *= Fraction(n.value) ** power
        elif isinstance(n, ast.Name) and n.id == var:
            if power < 0:
                raise ParseError(f"negative power of {var}")
            xdeg += power
        elif isinstance(n, ast.Name) and n.id in field.names:
            exps[field.names.index(n.id)] += power
        else:
            raise ParseError(f"unsupported term {ast.dump(n)[:50]}")

    visit(node)
    return const, tuple(exps), xdeg


@dataclass(frozen=True)
class RamificationCertificate:
    status: str          # certified | refuted
    f0_class: UnitClassModD
    case: str            # which valuation of f(0) carries the argument
    irreducibility: str  # how irreducibility was established

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {"status": self.status, "class": list(self.f0_class.vec), "case": self.case,
                "irreducibility": self.irreducibility}


def eisenstein_level(coeffs: Sequence, d: int, m: int) -> int | None:
    """Outermost-first slope test; returns the 1-based level whose Newton
    polygon is a single segment of slope ``a/d`` with ``gcd(a, d) = 1``,
    or ``None`` when no level certifies irreducibility."""
    current = {i: c.exps for i, c in enumerate(coeffs) if c is not None}
    for level in range(m, 0, -1):
        k = level - 1
        a = current[0][k]
        for i, e in current.items():
            # every point on or above the segment from (0, a) to (d, 0)
            if e[k] * d < a * (d - i):
                return None
        if gcd(a, d) == 1:
            return level
        # a is a multiple of d: rescale X and keep the points on the segment
        current = {i: e for i, e in current.items() if e[k] * d == a * (d - i)}
    return None


def ramification_certify(f: LaurentPolynomial, d: int, assume_irreducible: bool = False) -> RamificationCertificate:
    """Certify that ``f(0)`` is not a d-th power."""
    if not _is_prime(d):
        raise PreconditionViolated(f"d={d} is not prime")
    if f.degree != d:
        raise PreconditionViolated(f"degree {f.degree} differs from d={d}")
    lead = f.coefficient(d)
    if any(lead.exps):
        raise PreconditionViolated("polynomial is not monic")
    if f.coefficient(d - 1) is not None:
        raise PreconditionViolated("the X^(d-1) coefficient must vanish")
    f0 = f.coefficient(0)
    if f0 is None:
        raise PreconditionViolated("f(0) = 0, so f is reducible")
    m = f.field.m
    if assume_irreducible:
        how = "asserted by caller"
    else:
        level = eisenstein_level(f.coeffs, d, m)
        if level is None:
            raise PreconditionViolated("irreducibility not established by the slope test")
        how = f"single Newton slope prime to d along {f.field.names[level - 1]}"
    cls = unit_class(f0, d, m)  # -f(0) has the same class: -1 is a d-th power
    outer = f0.exps[-1] if m else 0
    case = "outer valuation nonzero" if outer else "outer valuation zero"
    status = "refuted" if cls.is_zero() else "certified"
    return RamificationCertificate(status, cls, case, how)
