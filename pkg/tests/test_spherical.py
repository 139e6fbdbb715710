import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import gausspolys
from hh.errors import InvarianceError, UnsupportedError
from hh.gausspoly import GaussPoly, PiScalar, WeylContext, inner, radial, theta, twisted_convolve
from hh.harness.oracles import j0_series, laguerre_explicit, sphere_bessel_series
from hh.spherical import (
    Family,
    a_closed_form,
    a_radial_integral,
    bk_norm,
    check_radii,
    choose_radii,
    component_project,
    divide_exact,
    eigenfunction_from_operator,
    eta_omega,
    generalized_spherical,
    laguerre_integral_coefficient,
    harmonic_basis,
    harmonic_decompose,
    harmonic_type,
    hecke_bochner,
    is_invariant,
    is_joint_eigenfunction,
    kernel_Q,
    kernel_Q_series,
    laguerre,
    laguerre_float,
    laguerre_value,
    laplacian,
    psi,
    q_series_tail_bound,
    reassemble,
    surface_measure_convolve,
)
from hh.weylfock import FockTruncation, IrredIndex, tau

C1 = WeylContext(1, 1)
C2 = WeylContext(2, 1)
U1, U2 = Family.unitary(1), Family.unitary(2)
PROD = Family.product(1, 1)


# -- Laguerre polynomials -----------------------------------------------------------

@pytest.mark.parametrize("alpha", [0, 1, 2, 5])
def test_laguerre_recurrence_matches_explicit_sum(alpha):
    for k in range(12):
        assert laguerre(k, alpha) == laguerre_explicit(k, alpha)


def test_laguerre_small_cases():
    assert laguerre(1, 1) == (2, -1)
    assert laguerre_value(2, 0, mpq(1)) == mpq(-1, 2)
    x = np.linspace(0, 5, 7)
    assert np.allclose(laguerre_float(3, 2, x), [float(laguerre_value(3, 2, mpq(v))) for v in x], rtol=1e-14)


@given(st.integers(1, 10), st.integers(0, 4), st.fractions(0, 5, max_denominator=7))
def test_laguerre_three_term_identity(k, alpha, x):
    x = mpq(x.numerator, x.denominator)
    lhs = (k + 1) * laguerre_value(k + 1, alpha, x)
    rhs = (2 * k + alpha + 1 - x) * laguerre_value(k, alpha, x) - (k + alpha) * laguerre_value(k - 1, alpha, x)
    assert lhs == rhs


# -- harmonics ------------------------------------------------------------------------

def test_harmonic_dimensions():
    assert harmonic_basis(C2, U2, (1, 1)).dim == 3
    assert harmonic_basis(C2, U2, (2, 2)).dim == 5
    assert harmonic_basis(C2, U2, (3, 1)).dim == 5
    assert harmonic_basis(C1, U1, (2, 1)).dim == 0
    for p in range(4):
        assert harmonic_basis(C2, U2, (p, 0)).dim == p + 1
    assert harmonic_basis(C2, PROD, ((1, 0), (0, 2))).dim == 1


def test_harmonic_bases_are_annihilated_by_laplacian():
    for family, ctx in ((U2, C2), (PROD, C2), (Family.unitary(3), WeylContext(3, 1))):
        for delta in ([(1, 1), (2, 1)] if len(family.blocks) == 1 else [((1, 0), (0, 1)), ((2, 0), (0, 0))]):
            for h in harmonic_basis(ctx, family, delta).basis:
                for sl in family.slices:
                    assert laplacian(h, sl).is_zero()


def test_decomposition_of_z1_zbar1():
    z1z1 = GaussPoly.monomial(C2, (1, 0), (1, 0))
    pieces = harmonic_decompose(z1z1, U2)
    radial_part = [p for p in pieces if p.delta == ((0, 0),)]
    assert len(radial_part) == 1 and radial_part[0].powers == (1,)
    assert radial_part[0].harmonic == GaussPoly.constant(C2, mpq(1, 2))
    harmonic = component_project(z1z1, U2, (1, 1))
    assert harmonic == z1z1 - GaussPoly.norm_sq(C2) * PiScalar.of(mpq(1, 2))
    assert laplacian(harmonic).is_zero()
    assert component_project(GaussPoly.norm_sq(C2), U2, (0, 0)) == GaussPoly.norm_sq(C2)


@given(st.data())
def test_decomposition_reassembles(data):
    family = data.draw(st.sampled_from([U2, PROD]))
    f = data.draw(gausspolys(C2, 4, 5, gauss_t=0))
    if f.is_zero():
        return
    pieces = harmonic_decompose(f, family)
    assert reassemble(pieces, family) == f
    for piece in pieces:
        assert harmonic_type(piece.harmonic, family) == piece.delta


def test_invariance_detection():
    assert is_invariant(GaussPoly.norm_sq(C2) ** 2, U2)
    assert not is_invariant(GaussPoly.norm_sq(C2, [0]), U2)
    assert is_invariant(GaussPoly.norm_sq(C2, [0]), PROD)


# -- spherical functions --------------------------------------------------------------

def test_psi_examples():
    assert psi(C1, IrredIndex.unitary(1, 0)).psi == GaussPoly.constant(C1, PiScalar.of(2, 0, -1), 1)
    assert psi(C1, IrredIndex.unitary(1, 0)).mu == {"L": PiScalar.of(-2)}
    want = GaussPoly(C2, {((0, 0), (0, 0)): 2, ((1, 0), (1, 0)): -2, ((0, 1), (0, 1)): -2}, 1)
    assert psi(C2, IrredIndex.unitary(2, 1)).psi == want * PiScalar.of(4, 0, -2)
    s = psi(C2, PROD.irreducible(0, 1))
    assert s.psi == GaussPoly(C2, {((0, 0), (0, 0)): 4, ((0, 1), (0, 1)): -8}, 1) * PiScalar.of(1, 0, -2)
    assert s.mu["L2"] == PiScalar.of(-6)


@pytest.mark.parametrize("lam", [1, -1, mpq(2, 3)])
def test_psi_idempotents(lam):
    ctx = WeylContext(2, lam)
    for family in (U2, PROD):
        alphas = list(family.irreducibles(2))
        for a in alphas:
            for b in alphas:
                prod_ = twisted_convolve(psi(ctx, a).psi, psi(ctx, b).psi)
                assert prod_ == (psi(ctx, a).psi if a == b else GaussPoly.zero(ctx, ctx.abs_lam))


def test_theta_zbar2_example():
    for k in range(4):
        lhs = theta(GaussPoly.zbar(C2, 1), psi(C2, IrredIndex.unitary(2, k)).psi)
        rhs = (GaussPoly.zbar(C2, 1) * radial(C2, laguerre(k, 2), None, 2)).with_gauss(1)
        assert lhs == rhs * PiScalar.of(-8, 0, -2)


@pytest.mark.parametrize("lam", [1, -1, mpq(2, 3)])
def test_generalized_spherical_closed_forms(lam):
    ctx = WeylContext(2, lam)
    for p in range(3):
        for q in range(3):
            for k in range(4):
                alpha = IrredIndex.unitary(2, k)
                gs = generalized_spherical(ctx, (p, q), alpha)  # verifies both closed forms
                lo = p if ctx.positive else q
                assert gs.is_zero == (lo > k)
                assert gs.A_scalar == a_closed_form(ctx, (p, q), alpha) == a_radial_integral(gs)


def test_gram_constant_reference():
    assert generalized_spherical(C2, (0, 0), IrredIndex.unitary(2, 0)).A_scalar == PiScalar.of(4, 0, -2)


def test_theta_of_high_holomorphic_degree_vanishes():
    for k in range(4):
        P = GaussPoly.monomial(C2, (k + 1, 0), (0, 1))
        assert theta(P, psi(C2, IrredIndex.unitary(2, k)).psi).is_zero()


def test_divide_exact():
    P = GaussPoly.monomial(C2, (1, 0), (0, 1))
    f = P * GaussPoly.norm_sq(C2)
    assert divide_exact(f, P) == GaussPoly.norm_sq(C2)
    with pytest.raises(ArithmeticError):
        divide_exact(GaussPoly.norm_sq(C2), P)


# -- Hecke-Bochner ---------------------------------------------------------------------

def test_gaussian_reference_coefficients():
    coeffs = hecke_bochner(GaussPoly.constant(C1), GaussPoly.gaussian(C1, 1), U1, 4)
    assert coeffs[0].C == coeffs[0].laguerre_integral == PiScalar.of(mpq(1, 2), 0, 1)
    assert all(c.C.is_zero() and c.laguerre_integral.is_zero() for c in coeffs[1:])


@pytest.mark.parametrize("lam", [1, -1])
def test_hecke_bochner_identity_and_closed_form(lam):
    ctx = WeylContext(2, lam)
    gs_ = [GaussPoly.gaussian(ctx, 1), GaussPoly.norm_sq(ctx).with_gauss(1)]
    for p in range(3):
        for q in range(3):
            P = harmonic_basis(ctx, U2, (p, q)).basis[0]
            for g in gs_:
                for c in hecke_bochner(P, g, U2, 3):
                    assert c.verified and c.C == c.laguerre_integral
                    lo = p if lam > 0 else q
                    if lo > c.alpha.degrees[0]:
                        assert c.C.is_zero()


def test_hecke_bochner_rejects_bad_inputs():
    with pytest.raises(ValueError, match="harmonic"):
        hecke_bochner(GaussPoly.norm_sq(C2), GaussPoly.gaussian(C2, 1), U2, 2)
    with pytest.raises(InvarianceError):
        hecke_bochner(GaussPoly.z(C2, 0), GaussPoly.z(C2, 1).with_gauss(1), U2, 2)
    with pytest.raises(UnsupportedError):
        laguerre_integral_coefficient(C2, ((0, 0), (0, 0)), GaussPoly.gaussian(C2, 1), 0)


def test_hecke_bochner_recovers_right_multiple():
    P = GaussPoly.monomial(C2, (1, 0), (0, 1))
    alpha = IrredIndex.unitary(2, 2)
    gs = generalized_spherical(C2, (1, 1), alpha)
    c = PiScalar.of(mpq(3, 5), -1)
    for coeff in hecke_bochner(P, (gs.L_scalar * c).with_gauss(1), U2, 3):
        assert coeff.C == (c if coeff.alpha == alpha else PiScalar())


def test_product_family_hecke_bochner():
    P = GaussPoly.monomial(C2, (1, 0), (0, 1))
    for g in (GaussPoly.gaussian(C2, 1), GaussPoly.norm_sq(C2, [0]).with_gauss(1)):
        assert all(c.verified for c in hecke_bochner(P, g, PROD, 3))


def test_generalized_orthogonality():
    for delta in [(1, 0), (1, 1), (0, 2)]:
        fams = [generalized_spherical(C2, delta, IrredIndex.unitary(2, k)) for k in range(5)]
        for i, a in enumerate(fams):
            for b in fams[i + 1:]:
                assert all(inner(x, y).is_zero() for x in a.Psi for y in b.Psi)


# -- square-integrable eigenfunctions ---------------------------------------------------

def test_eigenfunction_from_weyl_correspondence():
    t = FockTruncation(C2, 6)
    c = PiScalar.of(4, 0, -2)
    for k in range(3):
        alpha = IrredIndex.unitary(2, k)
        P = GaussPoly.monomial(C2, (1, 0), (0, 1))
        f = eigenfunction_from_operator(tau(P, t).restrict_columns(alpha.monomials()), alpha)
        assert f * c == theta(P, psi(C2, alpha).psi)
        assert is_joint_eigenfunction(f, alpha)


def test_bk_norm_weights():
    # |2|^2 Gamma(1 + 1 + 1) / 3 for a single (1, 1) coefficient at k = 3 on C^1
    assert bk_norm({(1, 1): [PiScalar.of(2)]}, U1, 3) == mpq(8, 3)


# -- kernels and surface measures --------------------------------------------------------

def test_surface_convolution_vanishes_above_degree():
    conv = surface_measure_convolve(C2, ((2, 0), (0, 0)), (1, 1), (1, 1))
    assert abs(conv.evaluate((0.2 + 0.1j, -0.3j))) < 1e-12
    with pytest.raises(ValueError):
        surface_measure_convolve(C2, ((1, 1), (0, 0)), (1, 1), (1, 1))


def test_surface_convolution_off_unit_radius():
    conv = surface_measure_convolve(C2, ((1, 0), (0, 1)), (2, 1), (mpq(3, 2), mpq(4, 5)))
    for z in ((0.3 + 0.1j, -0.2j), (1.1, 0.4 - 0.4j)):
        assert abs(conv.evaluate(z) - conv.closed_form(z)) < 1e-10


def test_radius_scan_avoids_laguerre_zero():
    # L_1^1(2) = 0, so a = 1 is not admissible once some m_i >= 1
    with pytest.raises(ValueError):
        check_radii(C2, (2, 0), (1, 1), 12)
    assert choose_radii(C2, (2, 0), 12) == (mpq(9, 8), 1)
    assert choose_radii(C2, (1, 1), 12) == (mpq(9, 8), mpq(9, 8))
    assert choose_radii(C2, (0, 0), 12) == (1, 1)


def test_q_kernel_against_series():
    rng = np.random.default_rng(5)
    for m in [(0, 0), (1, 2), (2, 1)]:
        a = choose_radii(C2, m, 12)
        for _ in range(3):
            z = tuple(0.3 * (rng.normal(size=2) + 1j * rng.normal(size=2)) / np.sqrt(2))
            w = tuple(np.exp(1j * rng.uniform(0, 2 * np.pi, 2)))
            err = abs(kernel_Q(C2, m, a, z, w) - kernel_Q_series(C2, m, a, z, w, 12))
            assert err <= 1e-8
            assert err <= 10 * q_series_tail_bound(C2, m, a, z, 12) + 1e-13


def test_kernels_need_circles_and_positive_lambda():
    with pytest.raises(UnsupportedError):
        kernel_Q(WeylContext(2, -1), (0, 0), (1, 1), (0, 0), (1, 1))
    with pytest.raises(UnsupportedError):
        kernel_Q(WeylContext(3, 1), (0, 0), (1, 1), (0, 0, 0), (1, 1, 1))


def test_eta_against_bessel_series():
    rng = np.random.default_rng(2)
    for _ in range(10):
        w, z = rng.normal(size=2) @ [1, 1j], rng.normal(size=2) @ [1, 1j]
        assert abs(eta_omega(U1, [w], [z]) - j0_series(abs(w) * abs(z))) < 1e-10
    w, z = rng.normal(size=4) @ [1, 1j, 0, 0], rng.normal(size=4) @ [0, 0, 1, 1j]
    x = np.linalg.norm([w, 0]) * np.linalg.norm([z, 0])
    assert abs(eta_omega(Family.unitary(2), [w, 0], [z, 0]) - sphere_bessel_series(2, x)) < 1e-10
    assert abs(eta_omega(PROD, [0, 0], [1, 2j]) - 1) < 1e-15
