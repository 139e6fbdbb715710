import numpy as np
import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from conftest import contexts, gausspolys
from hh.errors import SupportError
from hh.gausspoly import GaussPoly, PiScalar, WeylContext, inner, twisted_convolve
from hh.harness.oracles import displacement_element_oracle
from hh.spherical import psi
from hh.weylfock import (
    FockTruncation,
    IrredIndex,
    OperatorMatrix,
    displacement_matrix_element,
    gram_weight,
    hs_inner_alpha,
    inverse_weyl,
    ladder,
    ladder_action,
    plancherel_constant,
    projection,
    require_columns_in,
    tau,
    tau1,
    tau2,
    unitary_action,
    unitary_action_numeric,
    weyl_transform,
)

C1 = WeylContext(1, 1)
C2 = WeylContext(2, 1)
ONE, ZERO, I = PiScalar.of(1), PiScalar(), PiScalar.of(0, 1)


def test_truncation_indices():
    t = FockTruncation(C2, 2)
    assert t.dim == 6
    assert (1, 1) in t and (2, 1) not in t
    assert gram_weight(C2, (2, 1)) == mpq(2, 8)


def test_raising_and_lowering_examples():
    t = FockTruncation(C1, 2)
    up = ladder(t, 0, "Wbar")
    assert up.entry((1,), (0,)) == PiScalar.of(2)
    assert up.entry((2,), (1,)) == PiScalar.of(2)
    assert not up.column_support() & {(2,)}  # w^2 -> w^3 falls outside
    assert not ladder_action(C1, "W", 0, {(0,): ONE})


@pytest.mark.parametrize("lam", ["1", "-1", "3/2"])
@pytest.mark.parametrize("n", [1, 2])
def test_canonical_commutators_on_interior(n, lam):
    ctx = WeylContext(n, mpq(lam))
    N = 5
    t = FockTruncation(ctx, N)
    ident = OperatorMatrix.identity(t)
    for j in range(n):
        for k in range(n):
            W, Wb = ladder(t, k, "W"), ladder(t, j, "Wbar")
            c = (Wb @ W - W @ Wb).restrict(N - 1, N - 1)
            want = ident * PiScalar.of(-2 * ctx.lam) if j == k else OperatorMatrix.zero(t)
            assert c == want.restrict(N - 1, N - 1)
        assert ladder(t, j, "W").adjoint().restrict(N, N - 1) == ladder(t, j, "Wbar").restrict(N, N - 1)


def test_displacement_elements_frozen():
    assert displacement_matrix_element(C1, (0,), (0,)) == GaussPoly.gaussian(C1, 1)
    assert displacement_matrix_element(C1, (0,), (1,)) == GaussPoly.z(C1, 0).with_gauss(1) * PiScalar.of(-1)
    assert displacement_matrix_element(C1, (1,), (0,)) == GaussPoly.zbar(C1, 0).with_gauss(1)


@pytest.mark.parametrize("lam", [1.0, -1.0, 2 / 3])
def test_displacement_elements_match_matrix_exponential(lam):
    ctx = WeylContext(2, {1.0: 1, -1.0: -1}.get(lam, mpq(2, 3)))
    rng = np.random.default_rng(3)
    for _ in range(3):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        for nu in [(0, 0), (1, 2), (3, 0)]:
            for mu in [(0, 1), (2, 2), (1, 0)]:
                exact = displacement_matrix_element(ctx, nu, mu).evaluate(z)
                assert abs(exact - displacement_element_oracle(z, nu, mu, lam)) < 1e-10


@given(st.data())
def test_plancherel_polarization(data):
    ctx = data.draw(contexts())
    t = FockTruncation(ctx, 6)
    f, g = data.draw(gausspolys(ctx, 3, 3)), data.draw(gausspolys(ctx, 3, 3))
    assert inner(f, g) == plancherel_constant(ctx) * weyl_transform(f, t).hs_inner(weyl_transform(g, t))


@given(st.data())
def test_inverse_weyl_roundtrip(data):
    ctx = data.draw(contexts())
    f = data.draw(gausspolys(ctx, 4, 4))
    assert inverse_weyl(weyl_transform(f, FockTruncation(ctx, 4))) == f


def test_roundtrip_example():
    f = GaussPoly.monomial(C2, (1, 0), (0, 1), 1, 1)
    assert inverse_weyl(weyl_transform(f, FockTruncation(C2, 6))) == f
    assert inverse_weyl(OperatorMatrix.zero(FockTruncation(C2, 2))).is_zero()
    assert inverse_weyl(projection(IrredIndex.unitary(1, 0), FockTruncation(C1, 2))) == GaussPoly.constant(
        C1, PiScalar.of(2, 0, -1), 1
    )


@given(st.data())
def test_transform_is_multiplicative(data):
    ctx = data.draw(contexts())
    t = FockTruncation(ctx, 5)
    f, g = data.draw(gausspolys(ctx, 2, 3)), data.draw(gausspolys(ctx, 2, 3))
    assert weyl_transform(twisted_convolve(f, g), t) == weyl_transform(f, t) @ weyl_transform(g, t)


@given(st.data())
def test_conjugation_becomes_adjoint(data):
    ctx = data.draw(contexts())
    t = FockTruncation(ctx, 4)
    f = data.draw(gausspolys(ctx, 3, 3))
    assert weyl_transform(f.conj(), t) == weyl_transform(f.reflect(), t).adjoint()


def test_projections_from_psi():
    for n in (1, 2):
        ctx = WeylContext(n, 1)
        t = FockTruncation(ctx, 5)
        for k in range(6):
            a = IrredIndex.unitary(n, k)
            assert weyl_transform(psi(ctx, a).psi, t) == projection(a, t)


def test_hs_inner_of_identity_is_dimension():
    t = FockTruncation(C2, 4)
    ident = OperatorMatrix.identity(t)
    for k in range(5):
        a = IrredIndex.unitary(2, k)
        assert hs_inner_alpha(ident, ident, a) == PiScalar.of(k + 1)


def test_unitary_action_phase_and_permutation():
    t = FockTruncation(C2, 3)
    U = unitary_action([[I, ZERO], [ZERO, ONE]], t)
    assert U.entry((2, 1), (2, 1)) == PiScalar.of(-1)  # i^2
    assert U.entry((1, 0), (1, 0)) == I
    swap = unitary_action([[ZERO, ONE], [ONE, ZERO]], t)
    assert swap.entry((0, 1), (1, 0)) == ONE
    assert unitary_action([[ONE, ZERO], [ZERO, ONE]], t) == OperatorMatrix.identity(t)
    with pytest.raises(ValueError):
        unitary_action([[PiScalar.of(2), ZERO], [ZERO, ONE]], t)


def test_unitary_action_numeric_agrees_with_exact():
    t = FockTruncation(C2, 3)
    k = [[ZERO, I], [ONE, ZERO]]
    exact = unitary_action(k, t).to_numpy()
    numeric = unitary_action_numeric(np.array([[0, 1j], [1, 0]]), t)
    assert np.allclose(exact, numeric)


@pytest.mark.parametrize("lam", [1, -1])
def test_transform_intertwines_unitary_action(lam):
    ctx = WeylContext(2, lam)
    t = FockTruncation(ctx, 4)
    f = GaussPoly(ctx, {((1, 0), (0, 1)): PiScalar.of(1, 2), ((2, 0), (1, 0)): 1}, 1)
    for k in ([[I, ZERO], [ZERO, ONE]], [[ZERO, ONE], [ONE, ZERO]]):
        U = unitary_action(k, t)
        lhs = weyl_transform(f.linear_substitute(k), t)
        assert lhs.restrict(2, 2) == (U.adjoint() @ weyl_transform(f, t) @ U).restrict(2, 2)


def test_tau_orderings_agree_on_harmonics_only():
    t = FockTruncation(C2, 4)
    harmonic = GaussPoly.z(C2, 0) * GaussPoly.zbar(C2, 1)
    assert tau1(harmonic, t) == tau2(harmonic, t) == tau(harmonic, t)
    radial = GaussPoly.z(C2, 0) * GaussPoly.zbar(C2, 0)
    assert tau1(radial, t) != tau2(radial, t)


def test_columns_outside_irreducible_rejected():
    t = FockTruncation(C2, 3)
    with pytest.raises(SupportError):
        require_columns_in(OperatorMatrix.identity(t), IrredIndex.unitary(2, 1))
    require_columns_in(projection(IrredIndex.unitary(2, 1), t), IrredIndex.unitary(2, 1))


def test_operator_json_roundtrip():
    t = FockTruncation(C2, 2)
    S = ladder(t, 1, "Wbar") * PiScalar.of(mpq(1, 3), 2)
    assert OperatorMatrix.from_json(S.to_json()) == S
