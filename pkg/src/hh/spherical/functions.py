"""Bounded and generalized spherical functions, Hecke-Bochner coefficients, eigenfunctions."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from hh.errors import InvarianceError, UnsupportedError, VerificationError
from hh.gausspoly.context import WeylContext
from hh.gausspoly.convolve import twisted_convolve
from hh.gausspoly.ops import apply_op, theta
from hh.gausspoly.poly import GaussPoly, TermAccumulator, inner, radial
from hh.gausspoly.scalar import PiScalar, ZERO_SCALAR, fact
from hh.spherical.family import Family
from hh.spherical.harmonics import harmonic_basis, harmonic_type, is_invariant
from hh.spherical.laguerre import laguerre
from hh.spherical.linalg import inverse
from hh.weylfock.matrix import OperatorMatrix
from hh.weylfock.transform import pairing, plancherel_constant, require_columns_in
from hh.weylfock.truncation import IrredIndex


def family_of(alpha: IrredIndex) -> Family:
    return Family(alpha.blocks)


def _check(ctx: WeylContext, alpha: IrredIndex) -> None:
    if ctx.n != alpha.n:
        raise ValueError(f"{alpha} lives in C^{alpha.n}, context is C^{ctx.n}")


def _lo_hi(ctx: WeylContext, p: int, q: int) -> tuple[int, int]:
    # for lambda < 0 the holomorphic and antiholomorphic degrees trade places
    return (p, q) if ctx.positive else (q, p)


# -- bounded spherical functions --------------------------------------------------

@dataclass(frozen=True)
class SphericalFunction:
    alpha: IrredIndex
    psi: GaussPoly
    mu: dict = field(hash=False)


def eigenvalues(ctx: WeylContext, alpha: IrredIndex) -> dict:
    names = family_of(alpha).generator_names()
    return dict(zip(names, alpha.eigenvalues(ctx)))


def psi(ctx: WeylContext, alpha: IrredIndex) -> SphericalFunction:
    """pi^-n (2|lambda|)^n prod_i L_(m_i)^(n_i - 1)(2|lambda||z^i|^2) exp(-|lambda||z|^2)."""
    _check(ctx, alpha)
    two = 2 * ctx.abs_lam
    out = GaussPoly.constant(ctx, plancherel_constant(ctx))
    for sl, b, m in zip(alpha.block_slices, alpha.blocks, alpha.degrees):
        out = out * radial(ctx, laguerre(m, b - 1), sl, two)
    return SphericalFunction(alpha, out.with_gauss(ctx.abs_lam), eigenvalues(ctx, alpha))


def is_joint_eigenfunction(f: GaussPoly, alpha: IrredIndex) -> bool:
    fam = family_of(alpha)
    mu = eigenvalues(f.ctx, alpha)
    return all(apply_op(op, f) == f * mu[name] for name, op in fam.generators().items())


# -- generalized spherical functions -----------------------------------------------

def _leading(f: GaussPoly):
    key = max(f.coeffs, key=lambda ab: ab[0] + ab[1])
    return key, f.coefficient(*key)


def divide_exact(f: GaussPoly, p: GaussPoly) -> GaussPoly:
    """Polynomial quotient f / p; raises ArithmeticError when p does not divide f."""
    if not p:
        raise ZeroDivisionError("division by the zero polynomial")
    (pa, pb), pc = _leading(p)
    rest = f.polynomial_part()
    out = GaussPoly.zero(f.ctx)
    while rest:
        (a, b), c = _leading(rest)
        da = tuple(x - y for x, y in zip(a, pa))
        db = tuple(x - y for x, y in zip(b, pb))
        if min(da + db) < 0:
            raise ArithmeticError("polynomial is not divisible")
        term = GaussPoly._raw(f.ctx, {(da, db): c / pc}, mpq(0))
        out = out + term
        rest = rest - term * p
    return out


def l_closed_form(ctx: WeylContext, delta, alpha: IrredIndex) -> GaussPoly:
    """pi^-n (2|l|)^n prod_i (-1)^q_i (2|l|)^(p_i+q_i) L_(m_i - lo_i)^(n_i+p_i+q_i-1)(2|l||z^i|^2)."""
    _check(ctx, alpha)
    delta = family_of(alpha).delta(delta)
    two = 2 * ctx.abs_lam
    scalar = plancherel_constant(ctx)
    out = GaussPoly.constant(ctx)
    for (p, q), sl, b, m in zip(delta, alpha.block_slices, alpha.blocks, alpha.degrees):
        lo, _ = _lo_hi(ctx, p, q)
        if lo > m:
            return GaussPoly.zero(ctx)
        scalar = scalar.scale((-1) ** q * two ** (p + q))
        out = out * radial(ctx, laguerre(m - lo, b + p + q - 1), sl, two)
    return out * scalar


def a_closed_form(ctx: WeylContext, delta, alpha: IrredIndex) -> PiScalar:
    """pi^-n (2|l|)^(n + sum(p+q)) prod_i Gamma(m_i+n_i+hi_i) / (Gamma(n_i) Gamma(m_i-lo_i+1))."""
    _check(ctx, alpha)
    delta = family_of(alpha).delta(delta)
    two = 2 * ctx.abs_lam
    r = mpq(1)
    for (p, q), b, m in zip(delta, alpha.blocks, alpha.degrees):
        lo, hi = _lo_hi(ctx, p, q)
        if lo > m:
            return ZERO_SCALAR
        r *= two ** (p + q) * fact(m + b + hi - 1) / (fact(b - 1) * fact(m - lo))
    return plancherel_constant(ctx).scale(r)


def upsilon(ctx: WeylContext, family: Family, delta) -> GaussPoly:
    """prod_i |z^i|^(2(p_i + q_i))."""
    out = GaussPoly.constant(ctx)
    for norm, (p, q) in zip(family.invariants(ctx), family.delta(delta)):
        out = out * norm ** (p + q)
    return out


def _real_rational(s: PiScalar, power: int) -> mpq:
    if not s:
        return mpq(0)
    mono = s.monomial()
    if mono is None or mono[0] != power or mono[2] != 0:
        raise VerificationError(f"expected a real multiple of pi^{power}, got {s}")
    return mono[1]


def sphere_gram(column, family: Family) -> list[list[mpq]]:
    """Gram matrix of a harmonic column in the normalized (mean-value) sphere inner product."""
    ctx = column[0].ctx
    delta = harmonic_type(column[0], family)
    weight = mpq(1)
    for (p, q), b in zip(delta, family.blocks):
        weight *= fact(b - 1) / fact(p + q + b - 1)
    half = mpq(1, 2)
    return [
        [_real_rational(inner(f.with_gauss(half), g.with_gauss(half)), ctx.n) * weight for g in column]
        for f in column
    ]


def column_norm_integral(column, Psi, family: Family) -> PiScalar:
    """Integral of Psi* Psi for the column rescaled so that sum_j |P_j|^2 = Upsilon.

    Computed as tr(G_sphere^-1 G_Psi) / d, independent of the chosen harmonic basis.
    """
    ginv = inverse(sphere_gram(column, family))
    d = len(column)
    acc = TermAccumulator()
    for i, fi in enumerate(Psi):
        for j, fj in enumerate(Psi):
            if ginv[j][i]:
                acc.add(0, inner(fi, fj), ginv[j][i] / d)
    return acc.result().get(0, ZERO_SCALAR)


@dataclass(frozen=True)
class GeneralizedSpherical:
    delta: tuple
    alpha: IrredIndex
    column: tuple[GaussPoly, ...]
    Psi: tuple[GaussPoly, ...]
    L_scalar: GaussPoly
    A_scalar: PiScalar

    @property
    def is_zero(self) -> bool:
        return all(not f for f in self.Psi)


def generalized_spherical(ctx: WeylContext, delta, alpha: IrredIndex, check: bool = True) -> GeneralizedSpherical:
    """theta(P^delta) psi_alpha with its radial factor and Gram constant.

    With check=True the factorization Psi = P L exp(-|lambda||z|^2) and both closed
    forms are confirmed exactly; a mismatch raises VerificationError.
    """
    _check(ctx, alpha)
    fam = family_of(alpha)
    delta = fam.delta(delta)
    space = harmonic_basis(ctx, fam, delta)
    if not space.dim:
        raise ValueError(f"no harmonics of type {delta} for {fam}")
    base = psi(ctx, alpha).psi
    Psi = tuple(theta(P, base) for P in space.basis)
    if all(not f for f in Psi):
        L = GaussPoly.zero(ctx)
        A = ZERO_SCALAR
    else:
        L = divide_exact(Psi[0], space.basis[0])
        A = column_norm_integral(space.basis, Psi, fam)
    if check:
        for P, f in zip(space.basis, Psi):
            if f != (P * L).with_gauss(ctx.abs_lam):
                raise VerificationError(f"Psi does not factor through P * L for {delta}, {alpha}")
        if L != l_closed_form(ctx, delta, alpha):
            raise VerificationError(f"radial factor disagrees with the Laguerre closed form for {delta}, {alpha}")
        if A != a_closed_form(ctx, delta, alpha):
            raise VerificationError(f"Gram constant disagrees with the Gamma-ratio closed form for {delta}, {alpha}")
    return GeneralizedSpherical(delta, alpha, space.basis, Psi, L, A)


def a_radial_integral(gs: GeneralizedSpherical) -> PiScalar:
    """Integral of |L|^2 Upsilon exp(-2|lambda||z|^2), a second route to the Gram constant."""
    ctx = gs.L_scalar.ctx
    if not gs.L_scalar:
        return ZERO_SCALAR
    ups = upsilon(ctx, family_of(gs.alpha), gs.delta)
    lam = ctx.abs_lam
    return inner((gs.L_scalar * ups).with_gauss(lam), gs.L_scalar.with_gauss(lam))


# -- Hecke-Bochner ---------------------------------------------------------------

@dataclass(frozen=True)
class HeckeBochnerCoeff:
    alpha: IrredIndex
    C: PiScalar
    laguerre_integral: PiScalar | None
    verified: bool


def laguerre_integral_coefficient(ctx: WeylContext, delta, g: GaussPoly, k: int) -> PiScalar:
    """Closed-form Hecke-Bochner coefficient in the single-block family."""
    if len(delta) != 1:
        raise UnsupportedError("the Laguerre-integral coefficient is stated for U(n) only")
    (p, q), = delta
    n = ctx.n
    lo, hi = _lo_hi(ctx, p, q)
    if lo > k:
        return ZERO_SCALAR
    two = 2 * ctx.abs_lam
    lag = radial(ctx, laguerre(k - lo, n + p + q - 1), None, two)
    integrand = (g * lag * GaussPoly.norm_sq(ctx) ** (p + q)).with_gauss(g.gauss_t + ctx.abs_lam)
    r = mpq((-1) ** q) * fact(n - 1) * fact(k - lo) / fact(k + n + hi - 1)
    return integrand.integrate().scale(r)


def hecke_bochner_coefficient(gs: GeneralizedSpherical, g: GaussPoly) -> PiScalar:
    """A^-1 times the integral of conj(L) Upsilon g exp(-|lambda||z|^2)."""
    if gs.is_zero:
        return ZERO_SCALAR
    ctx = g.ctx
    ups = upsilon(ctx, family_of(gs.alpha), gs.delta)
    num = inner((g * ups).with_gauss(g.gauss_t + ctx.abs_lam), gs.L_scalar)
    return num / gs.A_scalar


def hecke_bochner(P: GaussPoly, g: GaussPoly, family: Family, max_degree: int, verify: bool = True):
    """Coefficients C_alpha with (P g) x psi_alpha = C_alpha theta(P) psi_alpha for |alpha| <= max_degree."""
    ctx = g.ctx
    family.require(ctx)
    if P.gauss_t != 0:
        raise ValueError("P must be a bare polynomial")
    delta = harmonic_type(P, family)
    if delta is None:
        raise ValueError("P must be a nonzero harmonic of a single bidegree type")
    if g.gauss_t <= 0:
        raise ValueError("g must decay (gauss_t > 0)")
    if not is_invariant(g, family):
        raise InvarianceError("g is not invariant under the group")
    F = P * g
    out = []
    for alpha in family.irreducibles(max_degree):
        gs = generalized_spherical(ctx, delta, alpha, check=verify)
        C = hecke_bochner_coefficient(gs, g)
        laguerre_integral = laguerre_integral_coefficient(ctx, delta, g, alpha.degrees[0]) if len(family.blocks) == 1 else None
        ok = True
        if verify:
            lhs = twisted_convolve(F, psi(ctx, alpha).psi)
            rhs = theta(P, psi(ctx, alpha).psi) * C
            ok = lhs == rhs and (laguerre_integral is None or laguerre_integral == C)
            if not ok:
                raise VerificationError(f"Hecke-Bochner identity fails at {alpha}")
        out.append(HeckeBochnerCoeff(alpha, C, laguerre_integral, ok))
    return out


# -- eigenfunctions from operators ---------------------------------------------------

def eigenfunction_from_operator(S: OperatorMatrix, alpha: IrredIndex, check: bool = True) -> GaussPoly:
    """z -> <Pi(z), S>_alpha for S supported on V_alpha (columns)."""
    require_columns_in(S, alpha)
    f = pairing(S, columns=alpha.monomials())
    if check and f:
        if not is_joint_eigenfunction(f, alpha):
            raise VerificationError(f"constructed function is not an eigenfunction for {alpha}")
        lhs = inner(f, f)
        rhs = S.hs_inner(S, columns=alpha.monomials()) / plancherel_constant(S.ctx)
        if lhs != rhs:
            raise VerificationError("L^2 norm does not match the Hilbert-Schmidt norm")
    return f


def bk_norm(coefficients: dict, family: Family, k: int) -> mpq:
    """Weighted sum  sum_delta |a_delta|^2 prod_i Gamma(n_i+p_i+q_i) / k^q_i  over a finite expansion.

    Coefficients map a bidegree label to a list of exact scalars; only rational
    squared moduli are accepted so the result stays exact.
    """
    total = mpq(0)
    for delta, values in coefficients.items():
        w = mpq(1)
        for (p, q), b in zip(family.delta(delta), family.blocks):
            w *= fact(b + p + q - 1) / mpq(k) ** q
        for v in values:
            s = PiScalar.coerce(v)
            total += w * _real_rational(s * s.conjugate(), 0) if s else 0
    return total


# -- structural checks -------------------------------------------------------------

def span_coefficients(vectors, target):
    """Complex rational c with sum_i c_i vectors[i] = target, or None when not in the span.

    Vectors are GaussPoly with the same Gaussian; coordinates are split into real
    and imaginary parts for every power of pi.
    """
    from hh.spherical.linalg import rref

    keys = set()
    for v in list(vectors) + [target]:
        for ab, s in v.coeffs.items():
            for k, _ in s.items():
                keys.add((ab, k))
    keys = sorted(keys)

    def flat(f: GaussPoly):
        out = []
        for ab, k in keys:
            re, im = f.coefficient(*ab).coefficient(k)
            out += [re, im]
        return out

    cols = []
    for v in vectors:
        cols.append(flat(v))
        cols.append(flat(v * PiScalar.of(0, 1)))
    rhs = flat(target)
    rows = [[c[r] for c in cols] + [rhs[r]] for r in range(len(rhs))]
    reduced, pivots = rref(rows)
    if len(cols) in pivots:
        return None
    sol = [mpq(0)] * len(cols)
    for row, p in zip(reduced, pivots):
        sol[p] = row[-1]
    return [PiScalar.of(sol[2 * i], sol[2 * i + 1]) for i in range(len(vectors))]


def equivariance_matrix(gs: GeneralizedSpherical, k):
    """Matrix M with Psi(k z) = M Psi(z), or None when some entry leaves the span."""
    rows = []
    for f in gs.Psi:
        moved = f.linear_substitute(k)
        c = span_coefficients(gs.Psi, moved)
        if c is None:
            return None
        rows.append(c)
    return rows


def compressed_rank(alpha: IrredIndex, ctx: WeylContext, max_pq: int | None = None) -> tuple[int, int]:
    """Rank of {W(P)|V_alpha compressed to V_alpha : P harmonic of type (p, p)} versus dim End(V_alpha)."""
    from itertools import product as cartesian

    from hh.spherical.linalg import rank
    from hh.weylfock.transform import tau
    from hh.weylfock.truncation import FockTruncation

    fam = family_of(alpha)
    top = max(alpha.degrees) if max_pq is None else max_pq
    trunc = FockTruncation(ctx, alpha.total_degree + len(alpha.blocks) * top)
    mons = alpha.monomials()
    rows = []
    for ps in cartesian(*(range(min(top, m) + 1) for m in alpha.degrees)):
        delta = tuple((p, p) for p in ps)
        for P in harmonic_basis(ctx, fam, delta).basis:
            T = tau(P, trunc)
            rows.append([_real_rational(T.entry(mu, nu), 0) for mu in mons for nu in mons])
    return rank(rows), alpha.dim ** 2
