"""Seeded random inputs for the suites."""

from __future__ import annotations

import random

from gmpy2 import mpq

from hh.gausspoly.context import WeylContext
from hh.gausspoly.poly import GaussPoly, monomials
from hh.gausspoly.scalar import PiScalar
from hh.weylfock.matrix import OperatorMatrix
from hh.weylfock.truncation import FockTruncation, IrredIndex


def random_rational(rng: random.Random, size: int = 4) -> mpq:
    return mpq(rng.randint(-size, size), rng.randint(1, size))


def random_scalar(rng: random.Random, complex_: bool = True) -> PiScalar:
    return PiScalar.of(random_rational(rng), random_rational(rng) if complex_ else 0)


def random_gausspoly(
    ctx: WeylContext, rng: random.Random, degree: int, terms: int = 4, gauss_t=None, hol_degree=None
) -> GaussPoly:
    """Random sum of monomials with total degree <= degree (holomorphic part <= hol_degree)."""
    keys = [
        (a, b)
        for da in range(degree + 1)
        if hol_degree is None or da <= hol_degree
        for db in range(degree - da + 1)
        for a in monomials(ctx.n, da)
        for b in monomials(ctx.n, db)
    ]
    chosen = rng.sample(keys, min(terms, len(keys)))
    t = ctx.abs_lam if gauss_t is None else gauss_t
    f = GaussPoly(ctx, {k: random_scalar(rng) for k in chosen}, t)
    return f if f else random_gausspoly(ctx, rng, degree, terms, gauss_t, hol_degree)


def random_operator_on(alpha: IrredIndex, trunc: FockTruncation, rng: random.Random, density: float = 0.5) -> OperatorMatrix:
    """Random operator with columns in V_alpha and arbitrary rows of the truncation."""
    entries = {}
    cols = alpha.monomials()
    for nu in cols:
        for mu in trunc.indices:
            if rng.random() < density:
                entries[(mu, nu)] = random_scalar(rng)
    if not entries:
        entries[(cols[0], cols[0])] = PiScalar.of(1)
    return OperatorMatrix(trunc, entries)
