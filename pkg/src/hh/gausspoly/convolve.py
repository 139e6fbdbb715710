"""Twisted convolution of polynomial-times-Gaussian functions in closed form.

f x g (z) = integral f(z - w) g(w) exp(2 i lambda Im(z . conj(w))) dw.

Writing f = P exp(-s|.|^2) and g = Q exp(-u|.|^2), the exponent becomes
-s|z|^2 - (s+u)|w|^2 + A.conj(w) + B.w with A = (s+lambda) z, B = (s-lambda) conj(z).
Each coordinate factorizes, and the Gaussian moments against that exponent are
polynomials in (z, conj z) times exp(AB/(s+u)).
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from gmpy2 import mpq

from hh.errors import GaussMismatch
from hh.gausspoly.poly import GaussPoly, TermAccumulator
from hh.gausspoly.scalar import fact


def output_gauss(s: mpq, u: mpq, lam: mpq) -> mpq:
    return (s * u + lam * lam) / (s + u)


@lru_cache(maxsize=None)
def _moment(i: int, j: int, s: mpq, u: mpq, lam: mpq) -> tuple:
    """int w^i conj(w)^j exp(-(s+u)|w|^2 + A conj(w) + B w) dw / (pi exp(AB/(s+u))).

    Returned as ((power of z, power of conj z), rational) pairs.
    """
    tot = s + u
    ca = (s + lam) / tot
    cb = (s - lam) / tot
    out = []
    for k in range(min(i, j) + 1):
        if (i - k and not ca) or (j - k and not cb):
            continue
        r = mpq(comb(i, k) * comb(j, k)) * fact(k) / tot ** (k + 1) * ca ** (i - k) * cb ** (j - k)
        out.append(((i - k, j - k), r))
    return tuple(out)


@lru_cache(maxsize=None)
def _kernel_1d(a: int, b: int, c: int, d: int, s: mpq, u: mpq, lam: mpq) -> tuple:
    """One-coordinate factor of  (z-w)^a conj(z-w)^b  x  w^c conj(w)^d, divided by pi."""
    acc: dict = {}
    for i in range(a + 1):
        ci = comb(a, i) * (-1) ** i
        for j in range(b + 1):
            cij = ci * comb(b, j) * (-1) ** j
            for (p, q), r in _moment(i + c, j + d, s, u, lam):
                key = (a - i + p, b - j + q)
                acc[key] = acc.get(key, 0) + cij * r
    return tuple((k, v) for k, v in sorted(acc.items()) if v)


def twisted_convolve(f: GaussPoly, g: GaussPoly) -> GaussPoly:
    """Exact twisted convolution f x g.

    Any pair with gauss_t(f) + gauss_t(g) > 0 is accepted; the natural class
    gauss_t = |lambda| is closed under the operation.
    """
    f._compatible(g)
    s, u, lam = f.gauss_t, g.gauss_t, f.ctx.lam
    if s + u <= 0:
        raise GaussMismatch("twisted convolution needs gauss_t(f) + gauss_t(g) > 0")
    t_out = output_gauss(s, u, lam)
    n = f.n
    if not f._c or not g._c:
        return GaussPoly.zero(f.ctx, t_out)
    acc = TermAccumulator()
    for (a, b), cf in f._c.items():
        for (c, d), cg in g._c.items():
            factors = [_kernel_1d(a[j], b[j], c[j], d[j], s, u, lam) for j in range(n)]
            if any(not fac for fac in factors):
                continue
            coeff = cf * cg
            partial = [((), (), mpq(1))]
            for fac in factors:
                partial = [
                    (pa + (p,), pb + (q,), r * v)
                    for pa, pb, r in partial
                    for (p, q), v in fac
                ]
            for pa, pb, r in partial:
                acc.add((pa, pb), coeff, r)
    coeffs = {k: v.times_pi(n) for k, v in acc.result().items()}
    return GaussPoly._raw(f.ctx, coeffs, t_out)
