"""Independent reference implementations and instance generators used to
cross-check the package.

The oracles work on plain integers and tuples with sympy, never calling the
code under test; the generators build package objects as inputs.
"""
from fractions import Fraction
from itertools import product
from math import gcd

import sympy

from normlift.fields import QQ
from normlift.lifting import PolySystem
from normlift.poly import SeriesPoly, parse_series
from normlift.series import PuiseuxSeries


# wedge products by multilinear expansion ------------------------------------


def sort_sign(idx):
    """Sign of the permutation sorting ``idx`` (0 when an index repeats)."""
    if len(set(idx)) < len(idx):
        return 0
    sign, seq = 1, list(idx)
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign


def wedge_by_expansion(vectors, d):
    """``{sorted index tuple: coefficient mod d}`` of v_1 ^ ... ^ v_j."""
    m = len(vectors[0])
    out = {}
    for idx in product(range(m), repeat=len(vectors)):
        s = sort_sign(idx)
        if not s:
            continue
        coeff = s
        for v, i in zip(vectors, idx):
            coeff *= v[i]
        key = tuple(sorted(idx))
        out[key] = (out.get(key, 0) + coeff) % d
    return {k: c for k, c in out.items() if c}


# subspaces of (Z/d)^n by explicit enumeration ---------------------------------


def span_set(gens, d, n):
    """All vectors of the span, by closure under adding multiples."""
    span = {tuple([0] * n)}
    for g in gens:
        g = tuple(x % d for x in g)
        span = {tuple((a + k * b) % d for a, b in zip(v, g)) for v in span for k in range(d)}
    return span


def intersection_is_zero(us, cs, d):
    n = len(us[0])
    W = span_set(us, d, n)
    diffs = [tuple((a - b) % d for a, b in zip(c, cs[0])) for c in cs[1:]]
    Wp = span_set(diffs, d, n)
    return W & Wp == {tuple([0] * n)}


def independent(us, d):
    n = len(us[0])
    return len(span_set(us, d, n)) == d ** len(us)


# Hilbert symbols by solving the conic modulo prime powers ------------------------


def squarefree(n):
    n = int(n)
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= p
    return out


def hilbert_brute(a, b, p):
    """(a,b)_p for integers a,b, by looking for a primitive solution of
    z^2 = a x^2 + b y^2 modulo p^k.

    After reducing a, b to squarefree integers every primitive solution has a
    partial derivative of valuation at most 1 (2 when p = 2), so by Hensel a
    solution mod p^3 (p^5 when p = 2) lifts.  Scaling by units, (x, y) may be
    normalized to (1, y) or (p x', 1); x = y = 0 forces p | z.
    """
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    a, b = squarefree(a), squarefree(b)
    k = 5 if p == 2 else 3
    mod = p ** k
    squares = {(z * z) % mod for z in range(mod)}
    candidates = [(1, y) for y in range(mod)] + [(p * x, 1) for x in range(mod // p)]
    for x, y in candidates:
        if (a * x * x + b * y * y) % mod in squares:
            return 1
    return -1


def places_of(*ints):
    primes = {2}
    for n in ints:
        primes.update(sympy.factorint(abs(int(n))))
    return [0] + sorted(primes)


# random Eisenstein-type polynomials ---------------------------------------------


def eisenstein_exponents(rng, d, m):
    """Exponent vectors (outer uniformizer last) for a monic degree-d
    polynomial with vanishing X^(d-1) term whose slope test succeeds at a
    random level; returns ``{i: exps}`` for the nonzero lower coefficients
    and the level."""
    level = rng.randrange(m)            # 0-based index of the certifying level
    a0 = [0] * m
    for k in range(m):
        if k > level:
            a0[k] = d * rng.randint(-1, 2)
        elif k == level:
            a0[k] = rng.choice([a for a in range(-2 * d, 3 * d) if gcd(a, d) == 1])
        else:
            a0[k] = rng.randint(-3, 3)
    coeffs = {0: tuple(a0)}
    for i in range(1, d - 1):
        if rng.random() < 0.5:
            continue
        e = [0] * m
        for k in range(m):
            if k > level:
                # on the segment (kept) or strictly above it (dropped)
                on = a0[k] // d * (d - i)   # a0[k] is a multiple of d here
                e[k] = on if rng.random() < 0.5 else on + rng.randint(1, 2)
            elif k == level:
                bound = Fraction(a0[k] * (d - i), d)
                e[k] = -(-bound.numerator // bound.denominator) + rng.randint(0, 2)
            else:
                e[k] = rng.randint(-3, 3)
        coeffs[i] = tuple(e)
    return coeffs, level


# random smooth square systems ---------------------------------------------------


def random_smooth_system(rng, n_vars):
    """A square system with an approximate root x: F = A (X - x) + t^k G with
    det A of valuation e and k > 2e."""
    xs = [parse_series(f"{rng.randint(-3, 3)} + {rng.randint(-3, 3)}*t", QQ) for _ in range(n_vars)]
    names = ["x", "y"][:n_vars]
    X = SeriesPoly.variables(QQ, n_vars, names)
    e = rng.randint(0, 2)
    if n_vars == 1:
        A = [[PuiseuxSeries.monomial(QQ, rng.choice([1, -2, 3]), e)]]
    else:
        a, b = rng.choice([1, 2, -1]), rng.choice([1, 3])
        A = [[PuiseuxSeries.constant(QQ, a), PuiseuxSeries.constant(QQ, b)],
             [PuiseuxSeries.constant(QQ, a), PuiseuxSeries.constant(QQ, b) + PuiseuxSeries.monomial(QQ, 1, e)]]
    k = 2 * e + 1 + rng.randint(0, 2)
    tk = PuiseuxSeries.monomial(QQ, 1, k)
    polys = []
    for i in range(n_vars):
        f = SeriesPoly.constant(QQ, n_vars, 0, names)
        for j in range(n_vars):
            f = f + (X[j] - SeriesPoly.constant(QQ, n_vars, xs[j], names)) * SeriesPoly.constant(QQ, n_vars, A[i][j], names)
        extra = X[i] * X[(i + 1) % n_vars] + SeriesPoly.constant(QQ, n_vars, rng.randint(1, 5), names)
        polys.append(f + extra * SeriesPoly.constant(QQ, n_vars, tk, names))
    return PolySystem.of(polys), xs
