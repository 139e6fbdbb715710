import os

from gmpy2 import mpq
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hh.gausspoly import GaussPoly, PiScalar, WeylContext

settings.register_profile(
    "repo",
    max_examples=int(os.environ.get("HH_EXAMPLES", "40")),
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

LAMBDAS = ["1", "-1", "2/3", "-3/2"]


def contexts(n_values=(1, 2)):
    return st.builds(WeylContext, st.sampled_from(n_values), st.sampled_from(LAMBDAS).map(mpq))


small_rationals = st.builds(mpq, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def scalars(draw, pi_powers=(0,)):
    terms = {}
    for k in pi_powers:
        terms[k] = (draw(small_rationals), draw(small_rationals))
    return PiScalar(terms)


@st.composite
def gausspolys(draw, ctx, max_degree=3, max_terms=4, gauss_t=None):
    n = ctx.n
    exps = st.tuples(*[st.integers(0, max_degree)] * n)
    count = draw(st.integers(0, max_terms))
    coeffs = {}
    for _ in range(count):
        a, b = draw(exps), draw(exps)
        if sum(a) + sum(b) > max_degree:
            continue
        coeffs[(a, b)] = draw(scalars())
    t = ctx.abs_lam if gauss_t is None else gauss_t
    return GaussPoly(ctx, coeffs, t)


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
