"""Gaussian elimination over Z/d for prime d.

Pivoting always takes the first column with a nonzero entry, and the
first row carrying it, so witnesses are reproducible.
"""
from __future__ import annotations

from typing import Sequence


def _check_prime_modulus(d: int):
    if d < 2:
        raise ValueError("modulus must be at least 2")


def rref(rows: Sequence[Sequence[int]], d: int):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    _check_prime_modulus(d)
    M = [[x % d for x in r] for r in rows]
    n_cols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = pow(M[r][c], -1, d)
        M[r] = [x * inv % d for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % d for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, d: int) -> int:
    return len(rref(rows, d)[1]) if rows else 0


def nullspace(rows, d: int, n_cols: int | None = None) -> list[list[int]]:
    """Basis of ``{x : rows . x = 0}``, one vector per free column in
    increasing order, each with a 1 in its free column."""
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    R, pivots = rref(rows, d) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * n_cols
        x[fc] = 1
        for r, pc in enumerate(pivots):
            x[pc] = (-R[r][fc]) % d
        basis.append(x)
    return basis


def span_contains(rows, v, d: int) -> bool:
    if not any(x % d for x in v):
        return True
    return rank(list(rows) + [list(v)], d) == rank(rows, d)


def transpose(M):
    return [list(col) for col in zip(*M)]
