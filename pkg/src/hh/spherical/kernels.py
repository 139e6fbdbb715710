"""Floating-point kernels on products of circles and the Bessel-type spherical functions.

Circle and torus integrals use the normalized (probability) Haar measure.  For
1-dimensional blocks the harmonics are w^p (q = 0) or conj(w)^q (p = 0), and
Y(omega) = omega^p conj(omega)^q is orthonormal for that measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb, exp, factorial, lgamma, log, pi, sqrt

import numpy as np
from scipy.special import roots_jacobi

from hh.errors import UnsupportedError
from hh.gausspoly.context import WeylContext
from hh.gausspoly.poly import GaussPoly
from hh.spherical.family import Family
from hh.spherical.functions import psi
from hh.spherical.laguerre import laguerre_float, laguerre_value
from hh.weylfock.truncation import IrredIndex


def _require_circles(ctx: WeylContext, m) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if ctx.n != len(m):
        raise UnsupportedError("kernels are implemented for products of circles (all n_i = 1)")
    if not ctx.positive:
        raise UnsupportedError("kernels are implemented for lambda > 0")
    return m


def block_types(m: int, order: int):
    """Circle harmonic types (p, q) with p <= m and q <= order."""
    return [(p, 0) for p in range(m + 1)] + [(0, q) for q in range(1, order + 1)]


def _circle_harmonic(w, p: int, q: int):
    return w ** p * np.conj(w) ** q


def phi(alpha: int, k: int, lam: float, z):
    """L_k^alpha(2|lambda||z|^2) exp(-|lambda||z|^2) on one complex coordinate."""
    x = 2 * lam * np.abs(z) ** 2
    return laguerre_float(k, alpha, x) * np.exp(-x / 2)


def choose_radii(ctx: WeylContext, m, order: int, start=(1, 1)):
    """Radii a_i = start, 9/8 start, 5/4 start, ... until every needed Laguerre value is nonzero.

    Checked exactly at rational a_i^2; returns the radii as Fractions-compatible rationals.
    """
    from gmpy2 import mpq

    m = _require_circles(ctx, m)
    out = []
    for mi, a0 in zip(m, start):
        a0 = mpq(a0)
        for step in range(64):
            a = a0 * (1 + mpq(step, 8))
            x = 2 * ctx.abs_lam * a * a
            bad = [(p, q) for p, q in block_types(mi, order) if laguerre_value(mi - p, p + q, x) == 0]
            if not bad:
                out.append(a)
                break
        else:
            raise ValueError(f"no admissible radius found near {a0} for m={mi}")
    return tuple(out)


# -- surface-measure convolution ----------------------------------------------------

def b_constant(ctx: WeylContext, delta, m, a) -> float:
    """prod_i (-1)^q (m-p)!/(m+q)! a^(2(p+q)) L_(m-p)^(p+q)(2|l|a^2) exp(-|l|a^2); 0 when some p > m."""
    m = _require_circles(ctx, m)
    lam = float(ctx.abs_lam)
    out = 1.0
    for (p, q), mi, ai in zip(delta, m, a):
        if p > mi:
            return 0.0
        ai = float(ai)
        out *= (-1) ** q * factorial(mi - p) / factorial(mi + q) * ai ** (2 * (p + q))
        out *= float(phi(p + q, mi - p, lam, ai))
    return out


def _monomial_value(delta, z):
    out = 1.0 + 0j
    for (p, q), zi in zip(delta, z):
        out *= _circle_harmonic(complex(zi), p, q)
    return out


def surface_closed_form(ctx: WeylContext, delta, m, a, z) -> complex:
    """b * pi^-n (2|l|)^n P(z) prod_i (-1)^q (2|l|)^(p+q) phi_(m-p)^(p+q)(z^i) for P = prod z_i^p conj(z_i)^q."""
    m = _require_circles(ctx, m)
    b = b_constant(ctx, delta, m, a)
    if b == 0.0:
        return 0j
    lam = float(ctx.abs_lam)
    out = b * (2 * lam / pi) ** ctx.n * _monomial_value(delta, z)
    for (p, q), mi, zi in zip(delta, m, z):
        out *= (-1) ** q * (2 * lam) ** (p + q) * phi(p + q, mi - p, lam, complex(zi))
    return complex(out)


def _torus(a, points: int):
    theta = 2 * pi * np.arange(points) / points
    grids = np.meshgrid(*[ai * np.exp(1j * theta) for ai in a], indexing="ij")
    return [g.ravel() for g in grids]


def surface_convolve_value(ctx: WeylContext, P: GaussPoly, m, a, z, points: int = 64) -> complex:
    """(P dmu_a) x psi_m at z, with dmu_a the probability measure on the torus of radii a."""
    m = _require_circles(ctx, m)
    lam = float(ctx.lam)
    w = _torus([float(x) for x in a], points)
    z = [complex(x) for x in z]
    Pw = P.polynomial_part().numeric()(np.stack(w, axis=-1))
    psi_f = psi(ctx, IrredIndex(ctx.n * (1,), m)).psi.numeric()
    diff = np.stack([zi - wi for zi, wi in zip(z, w)], axis=-1)
    phase = np.exp(-2j * lam * sum((zi * np.conj(wi)).imag for zi, wi in zip(z, w)))
    return complex(np.mean(Pw * psi_f(diff) * phase))


@dataclass(frozen=True)
class SurfaceConvolution:
    """(P dmu_a) x psi_m for P = prod z_i^p conj(z_i)^q, evaluated by torus quadrature."""

    ctx: WeylContext
    delta: tuple
    m: tuple
    a: tuple
    points: int = 64

    @property
    def polynomial(self) -> GaussPoly:
        a = tuple(p for p, _ in self.delta)
        b = tuple(q for _, q in self.delta)
        return GaussPoly.monomial(self.ctx, a, b)

    def evaluate(self, z, points: int | None = None) -> complex:
        return surface_convolve_value(self.ctx, self.polynomial, self.m, self.a, z, points or self.points)

    def closed_form(self, z) -> complex:
        return surface_closed_form(self.ctx, self.delta, self.m, self.a, z)

    def convergence(self, z) -> float:
        """Change in the quadrature value when the number of points doubles."""
        return abs(self.evaluate(z, 2 * self.points) - self.evaluate(z))


def surface_measure_convolve(ctx: WeylContext, delta, m, a, points: int = 64) -> SurfaceConvolution:
    m = _require_circles(ctx, m)
    delta = Family(ctx.n * (1,)).delta(delta)
    if any(p and q for p, q in delta):
        raise ValueError("on a circle the harmonics have p = 0 or q = 0")
    return SurfaceConvolution(ctx, delta, m, tuple(a), points)


# -- the kernels --------------------------------------------------------------------

def check_radii(ctx: WeylContext, m, a, order: int) -> None:
    """Reject radii at which some L_(m_i-p)^(p+q)(2|lambda|a_i^2) vanishes, for q <= order."""
    from gmpy2 import mpq

    m = _require_circles(ctx, m)
    for i, (mi, ai) in enumerate(zip(m, a)):
        ai = mpq(ai)
        x = 2 * ctx.abs_lam * ai * ai
        for p, q in block_types(mi, order):
            if laguerre_value(mi - p, p + q, x) == 0:
                raise ValueError(
                    f"radius a_{i + 1}={ai} is inadmissible: L_{mi - p}^{p + q}({x}) = 0 at (p, q)=({p}, {q})"
                )


def kernel_Q(ctx: WeylContext, m, a, z, omega, order: int = 12, strict: bool = True) -> complex:
    """exp(-2 i lambda Im(z . conj(a omega))) psi_m(z - a omega).

    With strict=True the radii must keep every Laguerre value with q <= order nonzero.
    """
    m = _require_circles(ctx, m)
    if strict:
        check_radii(ctx, m, a, order)
    return complex(_kernel_Q_array(ctx, m, a, z, omega))


def _kernel_Q_array(ctx: WeylContext, m, a, z, omega):
    lam = float(ctx.lam)
    out = (2 * abs(lam) / pi) ** ctx.n + 0j
    for mi, ai, zi, wi in zip(m, a, z, omega):
        shift = float(ai) * np.asarray(wi, dtype=complex)
        zi = complex(zi)
        out = out * np.exp(-2j * lam * (zi * np.conj(shift)).imag) * phi(0, mi, lam, zi - shift)
    return out


def q_coefficient(ctx: WeylContext, delta, m, a) -> float:
    """Constant c with  integral Q(z, w) Y(w) dw = c P(z) prod_i phi_(m_i-p_i)^(p_i+q_i)(z_i)."""
    m = _require_circles(ctx, m)
    lam = float(ctx.abs_lam)
    out = (2 * lam / pi) ** ctx.n
    for (p, q), mi, ai in zip(delta, m, a):
        if p > mi:
            return 0.0
        ai = float(ai)
        out *= (2 * lam) ** (p + q) * factorial(mi - p) / factorial(mi + q) * ai ** (p + q)
        out *= float(phi(p + q, mi - p, lam, ai))
    return out


def q_projection(ctx: WeylContext, delta, m, a, z, points: int = 128) -> complex:
    """Circle-trapezoid value of the integral of Q(z, w) Y_delta(w) over the torus."""
    w = _torus([1.0] * ctx.n, points)
    m = _require_circles(ctx, m)
    vals = _kernel_Q_array(ctx, m, a, z, w) * np.prod([_circle_harmonic(wi, p, q) for (p, q), wi in zip(delta, w)], axis=0)
    return complex(np.mean(vals))


def q_projection_closed(ctx: WeylContext, delta, m, a, z) -> complex:
    lam = float(ctx.abs_lam)
    out = q_coefficient(ctx, delta, m, a) * _monomial_value(delta, z)
    for (p, q), mi, zi in zip(delta, m, z):
        out *= phi(p + q, mi - p, lam, complex(zi))
    return complex(out)


def _p_block(lam: float, mi: int, p: int, q: int, zi: complex, wi: complex) -> complex:
    """One circle factor of <Pi(z), W(P)>_m Y(omega) with P normalized so ||W(P)||_m = 1."""
    c = 2 * lam / pi
    A = c * (2 * lam) ** (p + q) * factorial(mi + q) / factorial(mi - p)
    radial = c * (-1) ** q * (2 * lam) ** (p + q) * phi(p + q, mi - p, lam, zi)
    return complex(radial * _circle_harmonic(zi, p, q) / sqrt(c * A) * _circle_harmonic(wi, p, q))


def kernel_P_terms(ctx: WeylContext, m, z, omega, order: int) -> dict:
    """Terms of the series  sum_delta <Pi(z), W(P_delta)>_m Y_delta(omega)  with q_i <= order."""
    m = _require_circles(ctx, m)
    lam = float(ctx.abs_lam)
    blocks = [
        {pq: _p_block(lam, mi, *pq, complex(zi), complex(wi)) for pq in block_types(mi, order)}
        for mi, zi, wi in zip(m, z, omega)
    ]
    out = {}
    for combo in product(*(b.items() for b in blocks)):
        val = 1.0 + 0j
        for _, v in combo:
            val *= v
        out[tuple(pq for pq, _ in combo)] = val
    return out


def kernel_P(ctx: WeylContext, m, z, omega, order: int) -> complex:
    return sum(kernel_P_terms(ctx, m, z, omega, order).values())


def q_from_p_weight(ctx: WeylContext, delta, m, a) -> float:
    """w_delta with Q(z, omega) = sum_delta w_delta P_delta(z, conj(omega))."""
    lam = float(ctx.abs_lam)
    c = 2 * lam / pi
    out = q_coefficient(ctx, delta, m, a)
    for (p, q), mi in zip(delta, m):
        A = c * (2 * lam) ** (p + q) * factorial(mi + q) / factorial(mi - p)
        out *= sqrt(c * A) / (c * (-1) ** q * (2 * lam) ** (p + q))
    return out


def kernel_Q_series(ctx: WeylContext, m, a, z, omega, order: int) -> complex:
    """Q rebuilt from the reweighted series kernel, truncated at q_i <= order."""
    conj_omega = [complex(w).conjugate() for w in omega]
    terms = kernel_P_terms(ctx, m, z, conj_omega, order)
    return complex(sum(q_from_p_weight(ctx, d, m, a) * v for d, v in terms.items()))


def _log_block_bound(lam: float, mi: int, p: int, q: int, a: float, r: float) -> float:
    # |L_k^alpha(x)| exp(-x/2) <= C(k + alpha, k) bounds both Laguerre factors
    if r == 0 and p + q:
        return float("-inf")
    c = comb(mi + q, mi - p)
    return (
        (p + q) * log(2 * lam * a * max(r, 1e-300))
        + lgamma(mi - p + 1) - lgamma(mi + q + 1) + 2 * log(c)
    )


def q_series_tail_bound(ctx: WeylContext, m, a, z, order: int, horizon: int = 400) -> float:
    """Upper bound on |Q - kernel_Q_series| from all omitted types (some q_i > order)."""
    m = _require_circles(ctx, m)
    lam = float(ctx.abs_lam)
    full, kept = 1.0, 1.0
    for mi, ai, zi in zip(m, a, z):
        r = abs(complex(zi))
        total = inside = 0.0
        for p, q in block_types(mi, order + horizon):
            v = exp(_log_block_bound(lam, mi, p, q, float(ai), r))
            total += v
            if q <= order:
                inside += v
        full *= total
        kept *= inside
    return (2 * lam / pi) ** ctx.n * max(full - kept, 0.0)


# -- spherical functions of Bessel type ----------------------------------------------

def _circle_eta(w: complex, z: complex, points: int) -> float:
    theta = 2 * pi * np.arange(points) / points
    k = np.exp(1j * theta)
    return float(np.mean(np.cos((w * np.conj(k * z)).real)))


def _sphere_eta(n: int, x: float, points: int) -> float:
    """Mean of exp(i x Re xi_1) over the unit sphere of C^n, n >= 2."""
    nodes, weights = roots_jacobi(points, n - 1.5, n - 1.5)
    return float(np.sum(weights * np.cos(x * nodes)) / np.sum(weights))


def eta_omega(family: Family, omega, z, points: int | None = None) -> float:
    """Integral over K of exp(i Re<omega, k z>) by blockwise quadrature."""
    omega = [complex(w) for w in omega]
    z = [complex(x) for x in z]
    if len(omega) != family.n or len(z) != family.n:
        raise ValueError("omega and z must live in C^n")
    out = 1.0
    for sl, b in zip(family.slices, family.blocks):
        wi = [omega[j] for j in sl]
        zi = [z[j] for j in sl]
        x = sqrt(sum(abs(v) ** 2 for v in wi)) * sqrt(sum(abs(v) ** 2 for v in zi))
        pts = points or int(x) + 48
        if b == 1:
            out *= _circle_eta(wi[0], zi[0], pts)
        else:
            out *= _sphere_eta(b, x, pts)
    return out
