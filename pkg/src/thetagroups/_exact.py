"""Exact rank computations over the rationals."""
from __future__ import annotations

import numpy as np

PRIME = 2147483647


def rank_mod(M, p: int = PRIME) -> int:
    """Rank modulo a prime; a lower bound for the rank over Q."""
    A = np.array(M, dtype=np.int64) % p
    if A.size == 0:
        return 0
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        below = np.nonzero(A[r + 1:, c])[0] + r + 1
        if below.size:
            f = A[below, c].reshape(-1, 1)
            A[below] = (A[below] - (f * A[r]) % p) % p
        r += 1
    return r


def rank_exact(M) -> int:
    """Rank over Q by fraction-free elimination on Python integers."""
    A = [[int(x) for x in row] for row in M]
    A = [row for row in A if any(row)]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pv = A[r][c]
        for i in range(r + 1, rows):
            a = A[i][c]
            if a:
                row_r = A[r]
                A[i] = [(pv * x - a * y) // prev for x, y in zip(A[i], row_r)]
            else:
                A[i] = [pv * x // prev for x in A[i]]
        prev = pv
        r += 1
        if r == rows:
            break
    return r


def rank(M) -> int:
    """Exact rank; the modular rank is used as a shortcut when it is full."""
    A = np.asarray(M)
    if A.size == 0:
        return 0
    rm = rank_mod(A)
    if rm == min(A.shape):
        return rm
    return rank_exact(A.tolist())
