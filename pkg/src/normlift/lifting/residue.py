"""Solvers for the reduction of a system modulo the maximal ideal.

Over F_p every search here is exhaustive, so an empty answer is definitive.
Over the rationals only one-variable problems are decided exactly (rational
root theorem); multivariate searches scan a height box and report
themselves incomplete.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, NamedTuple, Sequence

import sympy

from ..fields import FieldDescriptor


class ResidueSolutions(NamedTuple):
    points: list
    complete: bool


ResidueSolver = Callable[[Sequence[dict], int], ResidueSolutions]


def eval_residue(poly: dict, field: FieldDescriptor, point) -> object:
    total = field.zero()
    for exps, c in poly.items():
        term = c
        for x, k in zip(point, exps):
            if k:
                term = field.mul(term, field.pow(x, k))
        total = field.add(total, term)
    return total


def _poly_divide_root(coeffs, r, field):
    """Synthetic division of ``sum coeffs[i] X^i`` by ``X - r``."""
    n = len(coeffs) - 1
    out = [field.zero()] * n
    acc = field.zero()
    for i in range(n, 0, -1):
        acc = field.add(field.mul(acc, r), coeffs[i])
        out[i - 1] = acc
    rem = field.add(field.mul(acc, r), coeffs[0])
    return out, rem


def _trim(coeffs, field):
    coeffs = [field(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def rational_sort_key(x: Fraction):
    x = Fraction(x)
    return (abs(x.numerator) + x.denominator, x < 0, abs(x))


def univariate_roots(coeffs: Sequence, field: FieldDescriptor) -> list[tuple]:
    """Roots in the field with multiplicities, for ``sum coeffs[i] X^i``.

    Order is canonical: ``0..p-1`` over F_p, increasing height with the
    positive sign first over Q.
    """
    coeffs = _trim(coeffs, field)
    if not coeffs:
        raise ValueError("roots of the zero polynomial")
    if len(coeffs) == 1:
        return []
    if field.is_finite:
        candidates = list(field.elements())
    else:
        X = sympy.Symbol("X")
        poly = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])),
                          X, domain=sympy.QQ)
        candidates = sorted((Fraction(int(r.p), int(r.q)) for r in poly.ground_roots()),
                            key=rational_sort_key)
    out = []
    for r in candidates:
        m, cur = 0, coeffs
        while len(cur) > 1:
            quo, rem = _poly_divide_root(cur, r, field)
            if rem != 0:
                break
            m += 1
            cur = quo
        if m:
            out.append((r, m))
    return out


def _rational_box(height: int):
    seen = set()
    vals = []
    for h in range(0, height + 1):
        for den in range(1, h + 1 if h else 2):
            num = h - den if h else 0
            for sgn in (1, -1):
                v = Fraction(sgn * num, den)
                if v not in seen:
                    seen.add(v)
                    vals.append(v)
    return vals


def default_residue_solver(field: FieldDescriptor, budget: int = 200_000,
                           height: int = 4) -> ResidueSolver:
    """Affine solver for reduced systems given as ``{exps: coeff}`` dicts."""

    def solve(polys: Sequence[dict], n_vars: int) -> ResidueSolutions:
        polys = [p for p in polys if any(c != 0 for c in p.values())]
        if n_vars == 0:
            ok = all(eval_residue(p, field, ()) == 0 for p in polys)
            return ResidueSolutions([()] if ok else [], True)
        if n_vars == 1 and polys and not field.is_finite:
            first = polys[0]
            deg = max(e[0] for e in first)
            coeffs = [field.zero()] * (deg + 1)
            for e, c in first.items():
                coeffs[e[0]] = field.add(coeffs[e[0]], c)
            pts = [(r,) for r, _ in univariate_roots(coeffs, field)]
            pts = [x for x in pts if all(eval_residue(p, field, x) == 0 for p in polys[1:])]
            return ResidueSolutions(pts, True)
        if field.is_finite:
            domain = list(field.elements())
            complete = field.p ** n_vars <= budget
        else:
            domain = _rational_box(height)
            complete = False
        pts = []
        for i, x in enumerate(product(domain, repeat=n_vars)):
            if i >= budget:
                complete = False
                break
            if all(eval_residue(p, field, x) == 0 for p in polys):
                pts.append(x)
        return ResidueSolutions(pts, complete)

    return solve
