"""Ladder operators, displacement matrix elements and the Weyl transform.

For lambda > 0 the Fock model has Wbar_j = 2|lambda| w_j, W_j = d/dw_j and
(Pi(z) u)(w) = u(w + conj z) exp(-2 lambda (w.z + |z|^2/2)).  For lambda < 0
the ladder roles swap, and Pi^lambda(z) = Pi^|lambda|(-conj z); the code
handles that case by flipping z -> -conj z on the function side.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np
from gmpy2 import mpq

from hh.errors import DivergenceError, SupportError, TruncationError
from hh.gausspoly.context import WeylContext
from hh.gausspoly.poly import GaussPoly, TermAccumulator
from hh.gausspoly.scalar import ONE, PiScalar, ZERO_SCALAR, fact
from hh.weylfock.matrix import OperatorMatrix
from hh.weylfock.truncation import FockTruncation, IrredIndex, gram_weight


# -- ladder operators ---------------------------------------------------------

def _raise(lam_abs: mpq, vec: dict, j: int) -> dict:
    out = {}
    for nu, c in vec.items():
        out[nu[:j] + (nu[j] + 1,) + nu[j + 1:]] = c.scale(2 * lam_abs)
    return out


def _lower(vec: dict, j: int) -> dict:
    out = {}
    for nu, c in vec.items():
        if nu[j]:
            out[nu[:j] + (nu[j] - 1,) + nu[j + 1:]] = c.scale(nu[j])
    return out


def ladder_action(ctx: WeylContext, kind: str, j: int, vec: dict) -> dict:
    """Exact action of W_j (kind "W") or Wbar_j (kind "Wbar") on {nu: PiScalar}."""
    raising = (kind == "Wbar") == ctx.positive
    if kind not in ("W", "Wbar"):
        raise ValueError(f"unknown ladder kind {kind!r}")
    return _raise(ctx.abs_lam, vec, j) if raising else _lower(vec, j)


def ladder(trunc: FockTruncation, j: int, kind: str) -> OperatorMatrix:
    """W_j or Wbar_j on the truncation; images above degree N are dropped."""
    if not 0 <= j < trunc.ctx.n:
        raise ValueError(f"ladder index {j + 1} out of range for n={trunc.ctx.n}")
    one = PiScalar.of(1)
    entries = {}
    for nu in trunc.indices:
        for mu, c in ladder_action(trunc.ctx, kind, j, {nu: one}).items():
            if mu in trunc.position:
                entries[(mu, nu)] = c
    return OperatorMatrix._raw(trunc, entries)


# -- displacement matrix elements ---------------------------------------------

@lru_cache(maxsize=None)
def _element_1d(nu: int, mu: int, lam: mpq) -> tuple:
    """sum_kappa C(nu,kappa) (-2 lam)^(mu-kappa)/(mu-kappa)!  z^(mu-kappa) zbar^(nu-kappa)."""
    out = []
    for k in range(min(nu, mu) + 1):
        r = mpq(comb(nu, k)) * (-2 * lam) ** (mu - k) / fact(mu - k)
        out.append(((mu - k, nu - k), r))
    return tuple(out)


def _product_terms(factors) -> list:
    partial = [((), (), ONE)]
    for fac in factors:
        partial = [(pa + (p,), pb + (q,), r * v) for pa, pb, r in partial for (p, q), v in fac]
    return partial


def displacement_matrix_element(ctx: WeylContext, nu, mu) -> GaussPoly:
    """<Pi(z) w^nu, w^mu> in the Fock inner product, as a function of z."""
    nu, mu = tuple(nu), tuple(mu)
    lam = ctx.abs_lam
    g = gram_weight(ctx, mu)
    coeffs = {
        (pa, pb): PiScalar.of(r * g)
        for pa, pb, r in _product_terms([_element_1d(x, y, lam) for x, y in zip(nu, mu)])
    }
    out = GaussPoly(ctx, coeffs, lam)
    return out if ctx.positive else out.antiholo_flip()


# -- Weyl transform ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _weyl_1d(a: int, b: int, mu: int, nu: int, t: mpq, lam: mpq) -> mpq:
    """One-coordinate factor of (1/g_mu) int z^a zbar^b e^{-t|z|^2} m_{nu mu}(z) dz / pi."""
    if a + mu != b + nu:
        return mpq(0)
    s = t + lam
    total = mpq(0)
    for k in range(min(nu, mu) + 1):
        e = a + mu - k
        total += mpq(comb(nu, k)) * (-2 * lam) ** (mu - k) / fact(mu - k) * fact(e) / s ** (e + 1)
    return total


def weyl_transform(f: GaussPoly, trunc: FockTruncation) -> OperatorMatrix:
    """Entries of G(f) = int f(z) Pi(z) dz on the truncation, exactly."""
    if f.ctx != trunc.ctx:
        raise ValueError("function and truncation have different contexts")
    if f.gauss_t <= 0:
        raise DivergenceError("the Weyl transform needs gauss_t > 0")
    ctx = f.ctx
    n = ctx.n
    lam = ctx.abs_lam
    h = f if ctx.positive else f.antiholo_flip()
    acc = TermAccumulator()
    for (a, b), c in h._c.items():
        shift = tuple(x - y for x, y in zip(a, b))
        for mu in trunc.indices:
            nu = tuple(m + s for m, s in zip(mu, shift))
            if min(nu) < 0 or nu not in trunc.position:
                continue
            r = ONE
            for j in range(n):
                r *= _weyl_1d(a[j], b[j], mu[j], nu[j], h.gauss_t, lam)
                if not r:
                    break
            if r:
                acc.add((mu, nu), c, r)
    entries = {k: v.times_pi(n) for k, v in acc.result().items()}
    return OperatorMatrix._raw(trunc, entries)


def pairing(S: OperatorMatrix, columns=None) -> GaussPoly:
    """z -> sum_nu <S u_nu, Pi(z) u_nu>, summed over the given columns (default all)."""
    ctx = S.ctx
    lam = ctx.abs_lam
    g = S.trunc.gram
    cols = None if columns is None else set(columns)
    acc = TermAccumulator()
    for (mu, nu), v in S._e.items():
        if cols is not None and nu not in cols:
            continue
        w = g[mu] / g[nu]
        # conj of the displacement element: swap the z and zbar powers
        for pa, pb, r in _product_terms([_element_1d(x, y, lam) for x, y in zip(nu, mu)]):
            acc.add((pb, pa), v, r * w)
    out = GaussPoly._raw(ctx, acc.result(), lam)
    return out if ctx.positive else out.antiholo_flip()


def plancherel_constant(ctx: WeylContext) -> PiScalar:
    """pi^-n (2|lambda|)^n."""
    return PiScalar.of((2 * ctx.abs_lam) ** ctx.n, 0, -ctx.n)


def inverse_weyl(S: OperatorMatrix) -> GaussPoly:
    """f with G(f) = S:  f(z) = pi^-n (2|lambda|)^n sum_nu <S u_nu, Pi(z) u_nu>."""
    return pairing(S) * plancherel_constant(S.ctx)


# -- tau, unitary action, projections -------------------------------------------------

def _tau_word(ctx, rho, gamma, vec: dict, variant: int) -> dict:
    def apply_all(kind, exps, v):
        for j, e in enumerate(exps):
            for _ in range(e):
                v = ladder_action(ctx, kind, j, v)
        return v

    if variant == 1:
        return apply_all("Wbar", gamma, apply_all("W", rho, vec))
    return apply_all("W", rho, apply_all("Wbar", gamma, vec))


def _tau(p: GaussPoly, trunc: FockTruncation, variants) -> OperatorMatrix:
    if p.gauss_t != 0:
        raise ValueError("tau expects a bare polynomial")
    if p.ctx.n != trunc.ctx.n:
        raise ValueError("dimension mismatch between polynomial and truncation")
    if p.degree > trunc.N:
        raise TruncationError(f"polynomial degree {p.degree} exceeds truncation N={trunc.N}")
    ctx = trunc.ctx
    weight = mpq(1, len(variants))
    one = PiScalar.of(1)
    acc = TermAccumulator()
    for nu in trunc.indices:
        for (rho, gamma), c in p._c.items():
            for variant in variants:
                for mu, v in _tau_word(ctx, rho, gamma, {nu: one}, variant).items():
                    if mu in trunc.position:
                        acc.add((mu, nu), v * c, weight)
    return OperatorMatrix._raw(trunc, acc.result())


def tau1(p: GaussPoly, trunc: FockTruncation) -> OperatorMatrix:
    """sum c Wbar^gamma W^rho over the monomials c z^rho zbar^gamma of p."""
    return _tau(p, trunc, (1,))


def tau2(p: GaussPoly, trunc: FockTruncation) -> OperatorMatrix:
    """sum c W^rho Wbar^gamma over the monomials c z^rho zbar^gamma of p."""
    return _tau(p, trunc, (2,))


def tau(p: GaussPoly, trunc: FockTruncation) -> OperatorMatrix:
    """Average of tau1 and tau2; the Weyl correspondence W(p)."""
    return _tau(p, trunc, (1, 2))


weyl_correspondence = tau


def _action_matrix(k, ctx: WeylContext):
    """The substitution matrix M with (U(k) u)(w) = u(M w)."""
    n = ctx.n
    if ctx.positive:
        return [[k[l][j] for l in range(n)] for j in range(n)]
    return [[k[l][j].conjugate() for l in range(n)] for j in range(n)]


def unitary_action(k, trunc: FockTruncation) -> OperatorMatrix:
    """U(k) for an exactly unitary matrix of Gaussian rationals.

    For lambda > 0, (U(k) u)(w) = u(k^T w), which is conj(k) acting on u; for
    lambda < 0, (U(k) u)(w) = u(k^* w).
    """
    ctx = trunc.ctx
    n = ctx.n
    km = [[PiScalar.coerce(x) for x in row] for row in k]
    if len(km) != n or any(len(row) != n for row in km):
        raise ValueError("unitary has the wrong shape")
    for i in range(n):
        for j in range(n):
            s = ZERO_SCALAR
            for l in range(n):
                s = s + km[i][l] * km[j][l].conjugate()
            if s != PiScalar.of(1 if i == j else 0):
                raise ValueError("matrix is not exactly unitary")
    m = _action_matrix(km, ctx)
    holo_ctx = WeylContext(n, 1)
    entries = {}
    zero = (0,) * n
    for nu in trunc.indices:
        image = GaussPoly.monomial(holo_ctx, nu, zero).linear_substitute(m)
        for (mu, _), c in image._c.items():
            entries[(mu, nu)] = c
    return OperatorMatrix._raw(trunc, entries)


def unitary_action_numeric(k, trunc: FockTruncation, tol: float = 1e-10) -> np.ndarray:
    """U(k) as a dense complex matrix (monomial basis) for a floating unitary k."""
    k = np.asarray(k, dtype=complex)
    n = trunc.ctx.n
    if k.shape != (n, n):
        raise ValueError("unitary has the wrong shape")
    if np.max(np.abs(k @ k.conj().T - np.eye(n))) > tol:
        raise ValueError("matrix is not unitary to the requested tolerance")
    m = k.T if trunc.ctx.positive else k.conj().T
    pos = trunc.position
    out = np.zeros((trunc.dim, trunc.dim), dtype=complex)
    for nu in trunc.indices:
        poly = {(0,) * n: 1.0 + 0j}
        for j, e in enumerate(nu):
            for _ in range(e):
                nxt: dict = {}
                for mono, c in poly.items():
                    for l in range(n):
                        if m[j, l] != 0:
                            key = mono[:l] + (mono[l] + 1,) + mono[l + 1:]
                            nxt[key] = nxt.get(key, 0) + c * m[j, l]
                poly = nxt
        for mu, c in poly.items():
            out[pos[mu], pos[nu]] = c
    return out


def projection(alpha: IrredIndex, trunc: FockTruncation) -> OperatorMatrix:
    alpha.require_in(trunc)
    one = PiScalar.of(1)
    return OperatorMatrix._raw(trunc, {(nu, nu): one for nu in alpha.monomials()})


def hs_inner_alpha(A: OperatorMatrix, B: OperatorMatrix, alpha: IrredIndex) -> PiScalar:
    """sum over an orthonormal basis u of V_alpha of <A u, B u>."""
    alpha.require_in(A.trunc)
    return A.hs_inner(B, columns=alpha.monomials())


def require_columns_in(S: OperatorMatrix, alpha: IrredIndex) -> None:
    bad = [nu for nu in S.column_support() if not alpha.contains(nu)]
    if bad:
        raise SupportError(f"operator has columns outside V_alpha, e.g. {sorted(bad)[0]}")


def twisted_convolve_fock(f: GaussPoly, g: GaussPoly, trunc: FockTruncation) -> GaussPoly:
    """f x g through the Fock model: inverse_weyl(G(f) G(g)) on the truncation."""
    return inverse_weyl(weyl_transform(f, trunc) @ weyl_transform(g, trunc))

