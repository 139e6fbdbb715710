"""Named verification suites.

Each suite is a list of checks.  Exact checks compare exact objects and have
residual 0 when they pass; oracle checks compare against a floating-point
oracle and report the observed error.  Infeasible configurations are rejected
before any check runs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np
from gmpy2 import mpq

from hh.errors import SupportError
from hh.gausspoly import (
    GaussPoly,
    L,
    Lbar,
    PiScalar,
    R,
    Rbar,
    apply_op,
    commutator,
    inner,
    theta,
    theta1,
    theta2,
    twisted_convolve,
)
from hh.harness import oracles
from hh.harness.config import ConfigError, NotApplicable, SuiteConfig
from hh.harness.randomgen import random_gausspoly, random_operator_on, random_scalar
from hh.harness.report import CheckRecord, SuiteReport
from hh.spherical import (
    Family,
    a_radial_integral,
    choose_radii,
    compressed_rank,
    eigenfunction_from_operator,
    equivariance_matrix,
    eta_omega,
    generalized_spherical,
    harmonic_basis,
    hecke_bochner,
    is_joint_eigenfunction,
    kernel_Q,
    kernel_Q_series,
    laguerre,
    psi,
    q_projection,
    q_projection_closed,
    q_series_tail_bound,
    surface_measure_convolve,
)
from hh.spherical.kernels import b_constant
from hh.weylfock import (
    FockTruncation,
    IrredIndex,
    OperatorMatrix,
    displacement_matrix_element,
    hs_inner_alpha,
    inverse_weyl,
    ladder,
    ladder_action,
    plancherel_constant,
    projection,
    tau,
    tau1,
    tau2,
    twisted_convolve_fock,
    weyl_transform,
)

ORACLE_TOL = 1e-8


class Skip(Exception):
    """Raised inside a check that does not apply to the configuration."""


@dataclass
class Check:
    check: str
    anchor: str
    kind: str  # "exact" or "oracle"
    run: Callable[[], tuple]


def exact(ok: bool, detail: str = "") -> tuple:
    return ok, "0" if ok else "nonzero", detail


def close(residual: float, tol: float = ORACLE_TOL, detail: str = "") -> tuple:
    return residual <= tol, format(residual, ".3e"), detail


def _rng(cfg: SuiteConfig, salt: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{salt}")


def _np_rng(cfg: SuiteConfig, salt: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, salt])


# -- fock-basics ---------------------------------------------------------------------

def _fock_basics(cfg: SuiteConfig) -> list[Check]:
    ctx = cfg.context()
    trunc = FockTruncation(ctx, cfg.N)
    n, N = ctx.n, cfg.N
    checks = []

    def commutators():
        if N == 0:
            raise Skip("interior empty")
        ok = True
        for j in range(n):
            for k in range(n):
                c = ladder(trunc, j, "Wbar") @ ladder(trunc, k, "W") - ladder(trunc, k, "W") @ ladder(trunc, j, "Wbar")
                want = OperatorMatrix.identity(trunc) * PiScalar.of(-2 * ctx.lam) if j == k else OperatorMatrix.zero(trunc)
                ok &= c.restrict(N - 1, N - 1) == want.restrict(N - 1, N - 1)
        return exact(ok)

    def adjoints():
        if N == 0:
            raise Skip("interior empty")
        ok = all(
            ladder(trunc, j, "W").adjoint().restrict(N, N - 1) == ladder(trunc, j, "Wbar").restrict(N, N - 1)
            for j in range(n)
        )
        return exact(ok)

    def raising_example():
        one = (0,) * n
        kind = "Wbar" if ctx.positive else "W"
        ok = all(
            ladder_action(ctx, kind, j, {one: PiScalar.of(1)})
            == {tuple(int(i == j) for i in range(n)): PiScalar.of(2 * ctx.abs_lam)}
            for j in range(n)
        )
        lower = "W" if ctx.positive else "Wbar"
        ok &= all(not ladder_action(ctx, lower, j, {one: PiScalar.of(1)}) for j in range(n))
        return exact(ok)

    def operator_commutators():
        rng = _rng(cfg, "ops")
        ok = True
        for _ in range(cfg.samples):
            f = random_gausspoly(ctx, rng, 4, 4)
            for j in range(n):
                for k in range(n):
                    d = int(j == k)
                    ok &= apply_op(commutator(Lbar(j), L(k)), f) == f * PiScalar.of(-2 * d * ctx.lam)
                    ok &= apply_op(commutator(Rbar(j), R(k)), f) == f * PiScalar.of(2 * d * ctx.lam)
                    for left in (L(j), Lbar(j)):
                        for right in (R(k), Rbar(k)):
                            ok &= not apply_op(commutator(left, right), f)
        return exact(ok)

    def displacement_oracle():
        rng = _np_rng(cfg, 1)
        top = min(N, 3)
        worst = 0.0
        idx = [nu for nu in trunc.indices if sum(nu) <= top]
        for z in oracles.random_points(rng, 5, n, 1.2):
            for nu in idx:
                for mu in idx:
                    e = displacement_matrix_element(ctx, nu, mu).evaluate(z)
                    o = oracles.displacement_element_oracle(z, nu, mu, float(ctx.lam))
                    worst = max(worst, abs(e - o))
        return close(worst)

    checks.append(Check("ladder-commutators", "canonical commutation relations of the ladder operators", "exact", commutators))
    checks.append(Check("ladder-adjoint", "W_j and Wbar_j are Gram-adjoint", "exact", adjoints))
    checks.append(Check("ladder-raising-example", "raising operator is multiplication by 2|lambda| w_j", "exact", raising_example))
    checks.append(Check("invariant-operator-commutators", "[Lbar_j, L_k] = -2 delta lambda, [Rbar_j, R_k] = 2 delta lambda, [L, R] = 0", "exact", operator_commutators))
    checks.append(Check("displacement-vs-expm", "matrix elements of Pi(z) against the matrix exponential", "oracle", displacement_oracle))
    return checks


# -- plancherel ------------------------------------------------------------------------

def _plancherel(cfg: SuiteConfig) -> list[Check]:
    ctx = cfg.context()
    trunc = FockTruncation(ctx, cfg.N)
    deg = min(6, cfg.N)
    rng = _rng(cfg, "plancherel")
    pairs = [(random_gausspoly(ctx, rng, deg, 4), random_gausspoly(ctx, rng, deg, 4)) for _ in range(cfg.samples)]
    c = plancherel_constant(ctx)
    cache: dict = {}

    def G(f):
        if f not in cache:
            cache[f] = weyl_transform(f, trunc)
        return cache[f]

    def polarization():
        return exact(all(inner(f, g) == c * G(f).hs_inner(G(g)) for f, g in pairs))

    def roundtrip():
        return exact(all(inverse_weyl(G(f)) == f for f, _ in pairs))

    def conj_reflect():
        return exact(all(G(f.conj()) == G(f.reflect()).adjoint() for f, _ in pairs))

    def convolution():
        ok = True
        for f, g in pairs[:3]:
            h = twisted_convolve(f, g)
            ok &= h == twisted_convolve_fock(f, g, trunc)
            ok &= G(h) == G(f) @ G(g)
        return exact(ok)

    def quadrature():
        worst = 0.0
        for f, g in pairs[:2]:
            value = oracles.gauss_hermite_integral(f * g.conj())
            worst = max(worst, abs(value - inner(f, g).to_complex()))
        return close(worst)

    return [
        Check("plancherel-polarization", "Plancherel polarization for the Weyl transform", "exact", polarization),
        Check("weyl-roundtrip", "inversion formula recovers f from its Weyl transform", "exact", roundtrip),
        Check("conjugation-adjoint", "G(conj f) = G(reflected f)*", "exact", conj_reflect),
        Check("twisted-convolution-product", "G(f x g) = G(f) G(g); closed form equals Fock route", "exact", convolution),
        Check("inner-product-quadrature", "L2 inner products against Gauss-Hermite quadrature", "oracle", quadrature),
    ]


# -- invariant-ops ------------------------------------------------------------------------

def _invariant_ops(cfg: SuiteConfig) -> list[Check]:
    ctx = cfg.context()
    N = cfg.N
    trunc = FockTruncation(ctx, N)
    n = ctx.n
    rng = _rng(cfg, "invariant-ops")
    fs = [random_gausspoly(ctx, rng, max(0, min(4, N - 2)), 4) for _ in range(cfg.samples)]

    def transfer():
        ok = True
        top = N - 1
        for f in fs:
            Gf = weyl_transform(f, trunc)
            for j in range(n):
                W, Wb = ladder(trunc, j, "W"), ladder(trunc, j, "Wbar")
                pairs = [
                    (weyl_transform(apply_op(L(j), f), trunc), -(Gf @ W)),
                    (weyl_transform(apply_op(Lbar(j), f), trunc), Gf @ Wb),
                    (weyl_transform(apply_op(R(j), f), trunc), -(W @ Gf)),
                    (weyl_transform(apply_op(Rbar(j), f), trunc), Wb @ Gf),
                ]
                ok &= all(a.restrict(top, top) == b.restrict(top, top) for a, b in pairs)
        return exact(ok)

    def hermite_eigen():
        fam = Family.unitary(n)
        return exact(all(is_joint_eigenfunction(psi(ctx, a).psi, a) for a in fam.irreducibles(cfg.k_max)))

    def theta_variants():
        fam = Family.unitary(n)
        ok = True
        base = psi(ctx, IrredIndex.unitary(n, min(cfg.k_max, 2))).psi
        for p in range(cfg.p_max + 1):
            for q in range(cfg.q_max + 1):
                for P in harmonic_basis(ctx, fam, (p, q)).basis:
                    ok &= theta1(P, base) == theta2(P, base)
        return exact(ok)

    def right_annihilation():
        if not ctx.positive:
            raise Skip("stated for lambda > 0")
        ok = all(
            not apply_op(R(0), GaussPoly.monomial(ctx, (k,) + (0,) * (n - 1), (0,) * n, 1, ctx.abs_lam))
            for k in range(cfg.k_max + 1)
        )
        return exact(ok)

    def theta_example():
        if n < 2 or not ctx.positive:
            raise Skip("needs n >= 2 and lambda > 0")
        ok = True
        two = 2 * ctx.abs_lam
        for k in range(cfg.k_max + 1):
            lhs = theta(GaussPoly.zbar(ctx, 1), psi(ctx, IrredIndex.unitary(n, k)).psi)
            from hh.gausspoly.poly import radial

            lag = radial(ctx, laguerre(k, n), None, two)
            rhs = (GaussPoly.zbar(ctx, 1) * lag).with_gauss(ctx.abs_lam) * PiScalar.of(-(two ** (n + 1)), 0, -n)
            ok &= lhs == rhs
        return exact(ok)

    def theta_tau():
        ok = True
        polys = [GaussPoly.z(ctx, 0), GaussPoly.zbar(ctx, n - 1), GaussPoly.z(ctx, 0) * GaussPoly.zbar(ctx, n - 1)]
        for k in range(cfg.k_max + 1):
            a = IrredIndex.unitary(n, k)
            if k + 2 > N:
                break
            base = psi(ctx, a).psi
            Gpsi = weyl_transform(base, trunc)
            for P in polys:
                ok &= weyl_transform(theta(P, base), trunc) == tau(P, trunc) @ Gpsi
        return exact(ok)

    def tau_variants():
        if n < 2:
            raise Skip("needs n >= 2")
        P = GaussPoly.z(ctx, 0) * GaussPoly.zbar(ctx, 1)
        return exact(tau1(P, trunc) == tau2(P, trunc))

    return [
        Check("weyl-transfer-of-invariant-operators", "G(Lf) = -G(f)W, G(Lbar f) = G(f)Wbar, G(Rf) = -W G(f), G(Rbar f) = Wbar G(f)", "exact", transfer),
        Check("special-hermite-eigenvalues", "special Hermite eigenvalues -2|lambda|(2k+n)", "exact", hermite_eigen),
        Check("theta-orderings-agree-on-harmonics", "theta1(P) = theta2(P) for harmonic P", "exact", theta_variants),
        Check("right-operator-annihilates-holomorphic", "R_1 z_1^k exp(-lambda|z|^2) = 0", "exact", right_annihilation),
        Check("theta-zbar2-laguerre", "theta(zbar_2) psi_k as a Laguerre function of type n", "exact", theta_example),
        Check("theta-intertwines-tau", "G(theta(P) psi) = tau(P) G(psi)", "exact", theta_tau),
        Check("tau-orderings-agree-on-harmonics", "tau1(P) = tau2(P) for harmonic P", "exact", tau_variants),
    ]


# -- projections ------------------------------------------------------------------------------

def _projections(cfg: SuiteConfig) -> list[Check]:
    ctx = cfg.context()
    trunc = FockTruncation(ctx, cfg.N)
    fam = cfg.family()
    alphas = list(fam.irreducibles(cfg.k_max))

    def transforms():
        return exact(all(weyl_transform(psi(ctx, a).psi, trunc) == projection(a, trunc) for a in alphas))

    def axioms():
        ok = True
        for a in alphas:
            P = projection(a, trunc)
            I = OperatorMatrix.identity(trunc)
            ok &= P @ P == P and P.adjoint() == P and hs_inner_alpha(I, I, a) == PiScalar.of(a.dim)
        return exact(ok)

    def inversion():
        return exact(all(inverse_weyl(projection(a, trunc)) == psi(ctx, a).psi for a in alphas))

    def idempotents():
        ok = True
        top = [a for a in alphas if a.total_degree <= 2]
        for a in top:
            for b in top:
                prod_ = twisted_convolve(psi(ctx, a).psi, psi(ctx, b).psi)
                ok &= prod_ == (psi(ctx, a).psi if a == b else GaussPoly.zero(ctx, ctx.abs_lam))
        return exact(ok)

    def completeness():
        rng = _rng(cfg, "completeness")
        ok = True
        for _ in range(max(1, cfg.samples // 2)):
            F = random_gausspoly(ctx, rng, min(cfg.N, 4), 4)
            hol = max(sum(a) for a, _ in F.coeffs) if ctx.positive else max(sum(b) for _, b in F.coeffs)
            total = GaussPoly.zero(ctx, ctx.abs_lam)
            for a in fam.irreducibles(hol):
                total = total + twisted_convolve(F, psi(ctx, a).psi)
            ok &= total == F
        return exact(ok)

    def quadrature():
        from hh.gausspoly.context import WeylContext

        # G(psi_k) has diagonal entries 1 on V_k and 0 elsewhere; the integrand
        # psi_k(z) <Pi(z) w^nu, w^nu> carries the Gaussian exp(-2|lambda||z|^2)
        c1 = WeylContext(1, ctx.lam)
        lam = float(ctx.lam)
        t = 2 * float(c1.abs_lam)
        x, w = np.polynomial.hermite.hermgauss(10)
        x, w = x / np.sqrt(t), w / np.sqrt(t)
        top = min(cfg.k_max, 3)
        polys = [psi(c1, IrredIndex.unitary(1, k)).psi.polynomial_part().numeric() for k in range(top + 1)]
        totals = np.zeros((top + 1, top + 2), dtype=complex)
        for xi, wi in zip(x, w):
            for yi, vi in zip(x, w):
                z = complex(xi, yi)
                zz = -z.conjugate() if lam < 0 else z
                D = oracles.displacement_oracle_1d(zz, abs(lam), 90)
                vals = [complex(p(np.array([[z]]))[0]) for p in polys]
                for nu in range(top + 2):
                    elem = D[nu, nu] * np.exp(t / 2 * abs(z) ** 2)
                    for k in range(top + 1):
                        totals[k, nu] += wi * vi * vals[k] * elem
        worst = 0.0
        for k in range(top + 1):
            for nu in range(top + 2):
                worst = max(worst, abs(totals[k, nu] - (1.0 if nu == k else 0.0)))
        return close(worst)

    return [
        Check("weyl-transform-of-psi", "G(psi_alpha) is the projection onto V_alpha", "exact", transforms),
        Check("projection-axioms", "P^2 = P, P* = P, <I, I>_alpha = d(alpha)", "exact", axioms),
        Check("inverse-of-projection", "inverse transform of P_alpha is psi_alpha", "exact", inversion),
        Check("psi-idempotents", "psi_alpha x psi_beta = delta psi_alpha", "exact", idempotents),
        Check("completeness", "sum_alpha F x psi_alpha = F", "exact", completeness),
        Check("projection-quadrature", "diagonal of G(psi_k) by quadrature with the matrix-exponential kernel (n=1)", "oracle", quadrature),
    ]


# -- Hecke-Bochner -------------------------------------------------------------------------------

def _gauss_family(ctx):
    t = ctx.abs_lam
    return [GaussPoly.gaussian(ctx, t), GaussPoly.norm_sq(ctx).with_gauss(t)]


def _hb_polys(cfg: SuiteConfig, ctx, fam: Family):
    chosen = cfg.polynomial(ctx)
    if chosen is not None:
        return [chosen]
    out = []
    for p in range(cfg.p_max + 1):
        for q in range(cfg.q_max + 1):
            if len(fam.blocks) == 1:
                deltas = [(p, q)]
            else:
                deltas = [((p, q), (p2, q2)) for p2 in range(cfg.p_max + 1) for q2 in range(cfg.q_max + 1) if p + q + p2 + q2 <= 2]
            for d in deltas:
                out += list(harmonic_basis(ctx, fam, d).basis[:1])
    return out


def _hecke_bochner_checks(cfg: SuiteConfig, ctx, fam: Family, tag: str) -> list[Check]:
    trunc = FockTruncation(ctx, cfg.N)
    polys = _hb_polys(cfg, ctx, fam)
    gs_ = _gauss_family(ctx) if len(fam.blocks) == 1 else [
        GaussPoly.gaussian(ctx, ctx.abs_lam),
        GaussPoly.norm_sq(ctx, fam.slices[0]).with_gauss(ctx.abs_lam),
    ]
    results: dict = {}

    def run_all():
        if not results:
            for P in polys:
                for g in gs_:
                    results[(P, g)] = hecke_bochner(P, g, fam, cfg.k_max)
        return results

    def identity():
        return exact(all(c.verified for coeffs in run_all().values() for c in coeffs))

    def laguerre_integral():
        if len(fam.blocks) != 1:
            raise Skip("closed-form Laguerre integral is for U(n)")
        return exact(all(c.C == c.laguerre_integral for coeffs in run_all().values() for c in coeffs))

    def operator_form():
        ok = True
        for (P, g), coeffs in run_all().items():
            GF = weyl_transform(P * g, trunc)
            T = tau(P, trunc)
            for c in coeffs:
                a = c.alpha
                if a.total_degree + P.degree > cfg.N:
                    continue
                cols = a.monomials()
                ok &= GF.restrict_columns(cols) == (T * c.C).restrict_columns(cols)
        return exact(ok)

    def uniqueness():
        rng = _rng(cfg, "uniqueness-" + tag)
        ok = True
        for alpha in list(fam.irreducibles(min(cfg.k_max, 3)))[: cfg.samples]:
            for P in polys[:3]:
                from hh.spherical.harmonics import harmonic_type

                gs = generalized_spherical(ctx, harmonic_type(P, fam), alpha)
                if gs.is_zero:
                    continue
                c = random_scalar(rng)
                radial_part = (gs.L_scalar * c).with_gauss(ctx.abs_lam)
                for coeff in hecke_bochner(P, radial_part, fam, min(cfg.k_max, 3)):
                    ok &= coeff.C == (c if coeff.alpha == alpha else PiScalar())
        return exact(ok)

    return [
        Check(f"{tag}-identity", "(P g) x psi_alpha = C_alpha theta(P) psi_alpha", "exact", identity),
        Check(f"{tag}-laguerre-integral", "C_alpha equals the Laguerre-integral closed form", "exact", laguerre_integral),
        Check(f"{tag}-operator-form", "G(P g) restricted to V_alpha = C_alpha W(P) restricted to V_alpha", "exact", operator_form),
        Check(f"{tag}-uniqueness", "coefficients of c Psi_alpha are recovered as c at alpha and 0 elsewhere", "exact", uniqueness),
    ]


def _hecke_bochner_un(cfg: SuiteConfig) -> list[Check]:
    ctx = cfg.context()
    checks = _hecke_bochner_checks(cfg, ctx, Family.unitary(ctx.n), "hb-un")

    def reference():
        from hh.gausspoly.context import WeylContext

        c1 = WeylContext(1, 1)
        coeffs = hecke_bochner(GaussPoly.constant(c1), GaussPoly.gaussian(c1, 1), Family.unitary(1), max(cfg.k_max, 1))
        want = [PiScalar.of(mpq(1, 2), 0, 1)] + [PiScalar()] * (len(coeffs) - 1)
        return exact([c.laguerre_integral for c in coeffs] == want and [c.C for c in coeffs] == want, "c_0 = pi/2, c_k = 0 for k >= 1")

    checks.append(Check("hb-un-gaussian-reference", "P = 1, g = exp(-|z|^2), n = 1, lambda = 1 coefficients", "exact", reference))
    return checks


def _product_config(cfg: SuiteConfig) -> SuiteConfig:
    return cfg if cfg.is_product else cfg.with_(n1=1, n2=1)


def _hecke_bochner_product(cfg: SuiteConfig) -> list[Check]:
    cfg = _product_config(cfg)
    ctx = cfg.context()
    fam = cfg.family()
    # the Laguerre-integral comparison is a single-block formula
    checks = [c for c in _hecke_bochner_checks(cfg, ctx, fam, "hb-product") if c.check != "hb-product-laguerre-integral"]

    def eigen():
        ok = True
        for a in fam.irreducibles(cfg.k_max):
            s = psi(ctx, a)
            want = [PiScalar.of(-2 * ctx.abs_lam * (2 * m + b)) for b, m in zip(a.blocks, a.degrees)]
            ok &= list(s.mu.values()) == want and is_joint_eigenfunction(s.psi, a)
        return exact(ok)

    def closed_forms():
        ok = True
        for a in fam.irreducibles(cfg.k_max):
            for p1 in range(cfg.p_max + 1):
                for q1 in range(cfg.q_max + 1):
                    for p2 in range(cfg.p_max + 1):
                        for q2 in range(cfg.q_max + 1):
                            d = ((p1, q1), (p2, q2))
                            if not harmonic_basis(ctx, fam, d).dim:
                                continue
                            gs = generalized_spherical(ctx, d, a)  # raises on any closed-form mismatch
                            ok &= gs.A_scalar == a_radial_integral(gs)
        return exact(ok)

    checks.insert(0, Check("product-eigenvalues", "blockwise special Hermite eigenvalues -2|lambda|(2 m_i + n_i)", "exact", eigen))
    checks.insert(1, Check("product-laguerre-closed-forms", "product-Laguerre radial factor and Gram constant", "exact", closed_forms))
    return checks


# -- generalized-spherical -------------------------------------------------------------------------

def _deltas(cfg: SuiteConfig, fam: Family):
    out = []
    if len(fam.blocks) == 1:
        out = [((p, q),) for p in range(cfg.p_max + 1) for q in range(cfg.q_max + 1)]
    else:
        out = [
            ((p1, q1), (p2, q2))
            for p1 in range(cfg.p_max + 1)
            for q1 in range(cfg.q_max + 1)
            for p2 in range(cfg.p_max + 1)
            for q2 in range(cfg.q_max + 1)
        ]
    return out


def _generalized_spherical(cfg: SuiteConfig) -> list[Check]:
    ctx = cfg.context()
    fam = cfg.family()
    alphas = list(fam.irreducibles(cfg.k_max))
    deltas = [d for d in _deltas(cfg, fam) if harmonic_basis(ctx, fam, d).dim]
    table: dict = {}

    def build():
        if not table:
            for d in deltas:
                for a in alphas:
                    table[(d, a)] = generalized_spherical(ctx, d, a)
        return table

    def closed_forms():
        build()
        return exact(True, f"{len(table)} (delta, alpha) pairs")

    def gram_positive():
        ok = True
        for gs in build().values():
            ok &= gs.A_scalar == a_radial_integral(gs)
            if not gs.is_zero:
                ok &= gs.A_scalar.to_complex().real > 0
        return exact(ok)

    def orthogonality():
        ok = True
        for d in deltas:
            for a, b in combinations(alphas, 2):
                ga, gb = build()[(d, a)], build()[(d, b)]
                ok &= all(not inner(x, y) for x in ga.Psi for y in gb.Psi)
        return exact(ok)

    def eigen():
        return exact(all(all(is_joint_eigenfunction(f, gs.alpha) for f in gs.Psi) for gs in build().values()))

    def equivariance():
        n = ctx.n
        one, zero = PiScalar.of(1), PiScalar()

        def diag(first, rest):
            return [[(first if i == 0 else rest) if i == j else zero for j in range(n)] for i in range(n)]

        ks = [diag(PiScalar.of(0, 1), one), diag(PiScalar.of(-1), PiScalar.of(-1))]
        if n >= 2 and len(fam.blocks) == 1:
            order = [1, 0] + list(range(2, n))
            ks.append([[one if j == order[i] else zero for j in range(n)] for i in range(n)])
        ok = True
        for gs in build().values():
            if gs.is_zero:
                continue
            for k in ks:
                ok &= equivariance_matrix(gs, k) is not None
        return exact(ok)

    def exhaustion():
        ok = True
        detail = []
        for a in fam.irreducibles(min(cfg.k_max, 3)):
            r, d2 = compressed_rank(a, ctx)
            ok &= r == d2
            detail.append(f"{a}:{r}/{d2}")
        return exact(ok, " ".join(detail))

    def hs_versus_l2():
        trunc = FockTruncation(ctx, cfg.N)
        rng = _rng(cfg, "hs-l2")
        c = plancherel_constant(ctx)
        ok = True
        for (d, a), gs in build().items():
            if gs.is_zero or a.total_degree + sum(p + q for p, q in d) > cfg.N:
                continue
            f = random_gausspoly(ctx, rng, min(4, cfg.N), 3)
            Gf = weyl_transform(f, trunc)
            for P, Psi in zip(gs.column, gs.Psi):
                W = tau(P, trunc)
                ok &= hs_inner_alpha(Gf, W, a) * c == inner(f, Psi)
                ok &= inner(Psi, Psi) == c * hs_inner_alpha(W, W, a)
        return exact(ok)

    return [
        Check("radial-factor-and-gram-closed-forms", "Laguerre radial factor and Gamma-ratio Gram constant", "exact", closed_forms),
        Check("gram-constant-positive", "Gram constant is positive and equals the radial integral", "exact", gram_positive),
        Check("orthogonality-across-alpha", "integral of Psi_beta* Psi_alpha vanishes for alpha != beta", "exact", orthogonality),
        Check("generalized-eigenfunctions", "every Psi entry is a joint eigenfunction", "exact", eigen),
        Check("equivariance-span", "Psi(k z) is a constant matrix times Psi(z) for phase and permutation k", "exact", equivariance),
        Check("weyl-correspondence-exhausts-endomorphisms", "W(H_delta) compressed to V_alpha spans End(V_alpha)", "exact", exhaustion),
        Check("hs-versus-l2", "<G(f), W(P)>_alpha and ||W(P)||_alpha against L2 integrals", "exact", hs_versus_l2),
    ]


# -- eigenfunctions --------------------------------------------------------------------------------

def _eigenfunctions(cfg: SuiteConfig) -> list[Check]:
    ctx = cfg.context()
    fam = cfg.family()
    trunc = FockTruncation(ctx, cfg.N)
    c = plancherel_constant(ctx)
    alphas = list(fam.irreducibles(cfg.k_max))

    def random_ops():
        rng = _rng(cfg, "eigen")
        count = 0
        for a in alphas:
            for _ in range(cfg.samples):
                S = random_operator_on(a, trunc, rng, 0.3)
                eigenfunction_from_operator(S, a, check=True)  # raises on failure
                count += 1
        return exact(True, f"{count} operators")

    def projection_case():
        return exact(all(eigenfunction_from_operator(projection(a, trunc), a) * c == psi(ctx, a).psi for a in alphas))

    def weyl_case():
        ok = True
        for a in alphas:
            for d in _deltas(cfg, fam)[:6]:
                for P in harmonic_basis(ctx, fam, d).basis[:1]:
                    if a.total_degree + P.degree > cfg.N:
                        continue
                    S = tau(P, trunc).restrict_columns(a.monomials())
                    f = eigenfunction_from_operator(S, a)
                    ok &= f * c == theta(P, psi(ctx, a).psi)
        return exact(ok)

    def support_rejected():
        a = alphas[-1]
        S = OperatorMatrix.identity(trunc)
        try:
            eigenfunction_from_operator(S, a)
        except SupportError:
            return exact(True)
        return exact(False, "operator with columns off V_alpha was accepted")

    def oracle_values():
        rng = _rng(cfg, "eigen-oracle")
        z_rng = _np_rng(cfg, 7)
        worst = 0.0
        for a in alphas[:4]:
            S = random_operator_on(a, FockTruncation(ctx, min(cfg.N, a.total_degree + 1)), rng, 0.5)
            f = eigenfunction_from_operator(S, a, check=False)
            g = S.trunc.gram
            for z in oracles.random_points(z_rng, 3, ctx.n, 1.0):
                total = 0j
                for (mu, nu), v in S.entries.items():
                    elem = oracles.displacement_element_oracle(z, nu, mu, float(ctx.lam), 30)
                    total += v.to_complex() / float(g[nu]) * np.conj(elem)
                worst = max(worst, abs(total - f.evaluate(z)))
        return close(worst)

    return [
        Check("random-operator-eigenfunctions", "<Pi(z), S>_alpha is an eigenfunction with ||f||^2 = pi^n (2|lambda|)^-n ||S||_alpha^2", "exact", random_ops),
        Check("projection-gives-psi", "pi^-n (2|lambda|)^n <Pi(z), P_alpha>_alpha = psi_alpha", "exact", projection_case),
        Check("weyl-correspondence-gives-theta", "pi^-n (2|lambda|)^n <Pi(z), W(P)>_alpha = theta(P) psi_alpha", "exact", weyl_case),
        Check("support-off-alpha-rejected", "operators with columns outside V_alpha are rejected", "exact", support_rejected),
        Check("pairing-vs-expm", "pairing values against matrix-exponential matrix elements", "oracle", oracle_values),
    ]


# -- kernels-and-surface ---------------------------------------------------------------------------

def _kernels(cfg: SuiteConfig) -> list[Check]:
    cfg = _product_config(cfg)
    ctx = cfg.context()
    ms = [(m1, m2) for m1 in range(min(cfg.k_max, 2) + 1) for m2 in range(min(cfg.k_max, 2) + 1)]
    rng = _np_rng(cfg, 11)
    zs = [tuple(z) for z in oracles.random_points(rng, 3, 2, 0.35)]
    omegas = [tuple(np.exp(1j * rng.uniform(0, 2 * np.pi, 2))) for _ in range(3)]
    one = (1, 1)

    def types(m):
        out = []
        for i1 in range(m[0] + 2):
            for i2 in range(m[1] + 2):
                out.append(((i1, 0), (i2, 0)))
        for q in range(1, 3):
            out += [((0, q), (0, 0)), ((0, 0), (0, q)), ((1, 0), (0, q))]
        return out

    def surface(radii):
        def run():
            worst = 0.0
            for m in ms:
                a = radii(m)
                for d in types(m):
                    conv = surface_measure_convolve(ctx, d, m, a)
                    for z in zs:
                        worst = max(worst, abs(conv.evaluate(z) - conv.closed_form(z)))
            return close(worst)

        return run

    def vanishing():
        worst = 0.0
        for m in ms:
            for d in types(m):
                if all(p <= mi for (p, _), mi in zip(d, m)):
                    continue
                conv = surface_measure_convolve(ctx, d, m, one)
                worst = max(worst, max(abs(conv.evaluate(z)) for z in zs))
        return close(worst)

    def b_reference():
        got = b_constant(ctx, ((0, 0), (0, 0)), (0, 0), one)
        want = float(np.exp(-float(ctx.abs_lam) * 2))
        return close(abs(got - want))

    def convergence():
        worst = 0.0
        for m in ms:
            for d in types(m)[:4]:
                conv = surface_measure_convolve(ctx, d, m, one)
                worst = max(worst, max(conv.convergence(z) for z in zs))
        return close(worst, 1e-10)

    def projection_claim():
        worst = 0.0
        for m in ms:
            for d in types(m):
                for z in zs:
                    worst = max(worst, abs(q_projection(ctx, d, m, one, z) - q_projection_closed(ctx, d, m, one, z)))
        return close(worst)

    def series():
        worst, bound = 0.0, 0.0
        for m in ms:
            for z in zs:
                bound = max(bound, q_series_tail_bound(ctx, m, one, z, cfg.order))
                for w in omegas:
                    q = kernel_Q(ctx, m, one, z, w, strict=False)
                    worst = max(worst, abs(q - kernel_Q_series(ctx, m, one, z, w, cfg.order)))
        return close(worst, ORACLE_TOL, f"q_i <= {cfg.order}, tail bound {bound:.3e}")

    def radii():
        notes = []
        for m in ms:
            chosen = choose_radii(ctx, m, cfg.order)
            if chosen != (1, 1):
                notes.append(f"m={m}: a={tuple(str(x) for x in chosen)}")
        return exact(True, "; ".join(notes) or "a = 1 admissible for all m")

    return [
        Check("surface-convolution-unit-radii", "surface-measure convolution against the b-constant closed form, a = 1", "oracle", surface(lambda m: one)),
        Check("surface-convolution-admissible-radii", "surface-measure convolution at scanned radii", "oracle", surface(lambda m: tuple(float(x) for x in choose_radii(ctx, m, cfg.order)))),
        Check("surface-convolution-vanishing", "convolution vanishes when some p_i > m_i", "oracle", vanishing),
        Check("surface-b-reference", "b = exp(-|lambda|(a_1^2 + a_2^2)) at p = q = m = 0", "oracle", b_reference),
        Check("surface-quadrature-convergence", "doubling the quadrature changes the value by < 1e-10", "oracle", convergence),
        Check("q-kernel-harmonic-projection", "torus projection of Q onto Y reproduces c P prod phi", "oracle", projection_claim),
        Check("q-kernel-vs-series", "Q against the reweighted series kernel", "oracle", series),
        Check("q-kernel-radius-scan", "radii with nonvanishing Laguerre values", "exact", radii),
    ]


# -- eta --------------------------------------------------------------------------------------------

def _eta(cfg: SuiteConfig) -> list[Check]:
    rng = _np_rng(cfg, 13)

    def circle_grid():
        fam = Family.unitary(1)
        ws = rng.uniform(0, 3, 10) * np.exp(1j * rng.uniform(0, 2 * np.pi, 10))
        zs = rng.uniform(0, 3, 10) * np.exp(1j * rng.uniform(0, 2 * np.pi, 10))
        worst = max(
            abs(eta_omega(fam, [w], [z]) - oracles.j0_series(abs(w) * abs(z))) for w in ws for z in zs
        )
        return close(worst, ORACLE_TOL, "10 x 10 grid")

    def origin():
        fam = cfg.family()
        z = oracles.random_points(rng, 1, fam.n, 2.0)[0]
        return close(abs(eta_omega(fam, [0] * fam.n, z) - 1))

    def invariance():
        fam = cfg.family()
        w = oracles.random_points(rng, 1, fam.n, 2.0)[0]
        z = oracles.random_points(rng, 1, fam.n, 2.0)[0]
        worst = 0.0
        for _ in range(3):
            blocks = []
            for b in fam.blocks:
                q, _ = np.linalg.qr(rng.normal(size=(b, b)) + 1j * rng.normal(size=(b, b)))
                blocks.append(q)
            from scipy.linalg import block_diag

            k = block_diag(*blocks)
            worst = max(worst, abs(eta_omega(fam, w, k @ z) - eta_omega(fam, w, z)))
        return close(worst)

    def sphere():
        worst = 0.0
        for n in (2, 3):
            fam = Family.unitary(n)
            for _ in range(5):
                w = oracles.random_points(rng, 1, n, 2.0)[0]
                z = oracles.random_points(rng, 1, n, 2.0)[0]
                x = np.linalg.norm(w) * np.linalg.norm(z)
                worst = max(worst, abs(eta_omega(fam, w, z) - oracles.sphere_bessel_series(n, x)))
        return close(worst)

    return [
        Check("eta-circle-bessel", "eta_omega(z) = J_0(|omega||z|) for n = 1", "oracle", circle_grid),
        Check("eta-at-origin", "eta_0 = 1", "oracle", origin),
        Check("eta-invariance", "eta_omega(k z) = eta_omega(z)", "oracle", invariance),
        Check("eta-sphere-series", "U(n) sphere quadrature against the Bessel series", "oracle", sphere),
    ]


# -- registry and runner ------------------------------------------------------------------------------

def _feasible_fock(cfg):
    if cfg.is_product:
        return
    if cfg.dimension > 4:
        raise ConfigError("desk-scale suites support n <= 4")


def _feasible_degree(cfg):
    _feasible_fock(cfg)
    if cfg.k_max > cfg.N:
        raise ConfigError(f"k_max={cfg.k_max} exceeds the truncation N={cfg.N}")


def _feasible_hb(cfg):
    _feasible_degree(cfg)
    if cfg.k_max + cfg.q_max > cfg.N:
        raise ConfigError(f"k_max + q_max = {cfg.k_max + cfg.q_max} exceeds the truncation N={cfg.N}")


def _feasible_un(cfg):
    if cfg.is_product:
        raise NotApplicable("hecke-bochner-un runs on the U(n) family; drop --n1/--n2")
    _feasible_hb(cfg)


def _feasible_product(cfg):
    _feasible_hb(_product_config(cfg))


def _feasible_kernels(cfg):
    cfg = _product_config(cfg)
    if (cfg.n1, cfg.n2) != (1, 1):
        raise NotApplicable("kernels-and-surface is implemented for n1 = n2 = 1")
    if cfg.lam_value <= 0:
        raise NotApplicable("kernels-and-surface is implemented for lambda > 0")


SUITES: dict = {
    "fock-basics": (_fock_basics, _feasible_fock),
    "plancherel": (_plancherel, _feasible_fock),
    "invariant-ops": (_invariant_ops, _feasible_degree),
    "projections": (_projections, _feasible_degree),
    "hecke-bochner-un": (_hecke_bochner_un, _feasible_un),
    "hecke-bochner-product": (_hecke_bochner_product, _feasible_product),
    "generalized-spherical": (_generalized_spherical, _feasible_hb),
    "eigenfunctions": (_eigenfunctions, _feasible_hb),
    "kernels-and-surface": (_kernels, _feasible_kernels),
    "eta": (_eta, lambda cfg: None),
}


def check_feasible(name: str, cfg: SuiteConfig) -> None:
    """Raise ConfigError (or NotApplicable) if the suite cannot run on cfg."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    SUITES[name][1](cfg)


def run_suite(name: str, cfg: SuiteConfig) -> SuiteReport:
    check_feasible(name, cfg)
    build = SUITES[name][0]
    checks = build(cfg)
    report = SuiteReport(name, cfg.as_record())
    for check in checks:
        if cfg.mode != "both" and check.kind != cfg.mode:
            report.records.append(CheckRecord(check.check, check.anchor, "skip", "-", f"{check.kind} check, mode {cfg.mode}"))
            continue
        start = time.perf_counter()
        try:
            ok, residual, detail = check.run()
            status = "pass" if ok else "fail"
        except Skip as exc:
            status, residual, detail = "skip", "-", str(exc)
        except Exception as exc:  # a crashing check is a failing check
            status, residual, detail = "fail", "-", f"{type(exc).__name__}: {exc}"
        report.records.append(CheckRecord(check.check, check.anchor, status, residual, detail, time.perf_counter() - start))
    return report
