"""Floating-point oracles used to cross-check exact results."""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import factorial, sqrt

import mpmath
import numpy as np
from scipy.linalg import expm

from hh.gausspoly.poly import GaussPoly


def gauss_hermite_integral(f: GaussPoly, order: int | None = None) -> complex:
    """Integral of f over C^n by tensor Gauss-Hermite quadrature in the 2n real coordinates.

    The Gaussian of f is the quadrature weight, so the rule is exact once
    order > degree / 2.
    """
    t = float(f.gauss_t)
    if t <= 0:
        raise ValueError("quadrature needs a decaying Gaussian")
    order = order or f.degree // 2 + 2
    x, w = np.polynomial.hermite.hermgauss(order)
    x = x / sqrt(t)
    w = w / sqrt(t)
    poly = f.polynomial_part().numeric()
    n = f.n
    grids = np.meshgrid(*([x] * (2 * n)), indexing="ij")
    weights = np.ones_like(grids[0])
    for wg in np.meshgrid(*([w] * (2 * n)), indexing="ij"):
        weights = weights * wg
    z = np.stack([grids[2 * j] + 1j * grids[2 * j + 1] for j in range(n)], axis=-1)
    return complex(np.sum(weights * poly(z.reshape(-1, n)).reshape(weights.shape)))


@lru_cache(maxsize=None)
def _ladders(size: int, lam: float):
    k = np.arange(1, size)
    lower = np.diag(np.sqrt(2 * lam * k), 1)
    return lower.T.copy(), lower


def displacement_oracle_1d(z: complex, lam: float, size: int = 60) -> np.ndarray:
    """exp(-z Wbar + conj(z) W) in the orthonormal basis u_0, ..., u_(size-1) (lambda > 0)."""
    raise_, lower = _ladders(size, lam)
    return expm(-z * raise_ + np.conj(z) * lower)


def displacement_element_oracle(z, nu, mu, lam: float, size: int = 60) -> complex:
    """<Pi(z) w^nu, w^mu> from per-coordinate matrix exponentials (unnormalized monomials)."""
    flip = lam < 0
    out = 1.0 + 0j
    for zj, a, b in zip(z, nu, mu):
        zj = complex(zj)
        if flip:
            zj = -zj.conjugate()
        out *= displacement_oracle_1d(zj, abs(lam), size)[b, a]
    g = 1.0
    for k in tuple(nu) + tuple(mu):
        g *= factorial(k) / (2 * abs(lam)) ** k
    return out * sqrt(g)


def j0_series(x: float, terms: int = 80) -> float:
    """Power series of the Bessel function J_0 evaluated in 40-digit arithmetic."""
    return sphere_bessel_series(1, x, terms)


def sphere_bessel_series(n: int, x: float, terms: int = 80) -> float:
    """Mean of exp(i x Re xi_1) over the unit sphere of C^n:  sum (-1)^k (x/2)^(2k) (n-1)! / (k! (n-1+k)!)."""
    with mpmath.workdps(40):
        s = mpmath.mpf(0)
        h = mpmath.mpf(x) / 2
        for k in range(terms):
            s += (-1) ** k * h ** (2 * k) * factorial(n - 1) / (mpmath.factorial(k) * mpmath.factorial(n - 1 + k))
        return float(s)


def circle_trapezoid(f, points: int) -> complex:
    """Mean of f(e^{i theta}) over equally spaced angles."""
    theta = 2 * np.pi * np.arange(points) / points
    return complex(np.mean(f(np.exp(1j * theta))))


def laguerre_explicit(k: int, alpha: int):
    """Coefficients of L_k^alpha from the explicit binomial sum."""
    from gmpy2 import mpq

    from math import comb

    return tuple(mpq((-1) ** i * comb(k + alpha, k - i), factorial(i)) for i in range(k + 1))


def random_points(rng: np.random.Generator, count: int, n: int, radius: float = 1.5):
    pts = rng.normal(size=(count, n)) + 1j * rng.normal(size=(count, n))
    return pts * (radius / max(1.0, np.abs(pts).max()))


def tensor_indices(n: int, top: int):
    return product(range(top + 1), repeat=n)
