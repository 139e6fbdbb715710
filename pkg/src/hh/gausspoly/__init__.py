"""Exact algebra of polynomial-times-Gaussian functions on C^n."""

from hh.gausspoly.context import DEFAULT_MAX_DEGREE, WeylContext, max_degree
from hh.gausspoly.convolve import twisted_convolve
from hh.gausspoly.ops import (
    Dz,
    Dzbar,
    InvariantOp,
    L,
    Lbar,
    R,
    Rbar,
    Z,
    Zbar,
    apply_op,
    commutator,
    special_hermite,
    theta,
    theta1,
    theta2,
    theta_op,
)
from hh.gausspoly.poly import GaussPoly, add, conj, evaluate, inner, integrate, mul, radial, reflect
from hh.gausspoly.scalar import PiScalar, rational

__all__ = [
    "DEFAULT_MAX_DEGREE", "Dz", "Dzbar", "GaussPoly", "InvariantOp", "L", "Lbar", "PiScalar",
    "R", "Rbar", "WeylContext", "Z", "Zbar", "add", "apply_op", "commutator", "conj", "evaluate",
    "inner", "integrate", "max_degree", "mul", "radial", "rational", "reflect", "special_hermite",
    "theta", "theta1", "theta2", "theta_op", "twisted_convolve",
]
