"""Generalized Laguerre polynomials with exact rational coefficients."""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq


@lru_cache(maxsize=None)
def laguerre(k: int, alpha: int) -> tuple:
    """Coefficients (c_0, ..., c_k) of L_k^alpha(x) = sum c_i x^i.

    Built from (j+1) L_{j+1} = (2j+1+alpha-x) L_j - (j+alpha) L_{j-1}.
    """
    if k < 0:
        return ()
    prev = [mpq(1)]
    if k == 0:
        return tuple(prev)
    cur = [mpq(1 + alpha), mpq(-1)]
    for j in range(1, k):
        nxt = [mpq(0)] * (j + 2)
        for i, c in enumerate(cur):
            nxt[i] += (2 * j + 1 + alpha) * c
            nxt[i + 1] -= c
        for i, c in enumerate(prev):
            nxt[i] -= (j + alpha) * c
        prev, cur = cur, [c / (j + 1) for c in nxt]
    return tuple(cur)


def laguerre_value(k: int, alpha: int, x) -> mpq:
    """Exact L_k^alpha(x) at a rational x (Horner)."""
    out = mpq(0)
    for c in reversed(laguerre(k, alpha)):
        out = out * x + c
    return out


def laguerre_float(k: int, alpha: int, x):
    """L_k^alpha(x) in floating point, vectorized over x."""
    out = 0.0
    for c in reversed(laguerre(k, alpha)):
        out = out * x + float(c)
    return out
